// Harness: noise determinism and statistics, trial pipeline, Monte Carlo and
// sweep behaviour.

#include <doctest.h>

#include <cmath>

#include "romscat/errors.hpp"
#include "romscat/experiment.hpp"
#include "test_common.hpp"

using namespace romscat;

namespace {

BoundarySpectrum flat_spectrum(int m) {
    BoundarySpectrum s;
    s.k = Eigen::VectorXd::LinSpaced(m, 1.0, 10.0);
    s.f = Eigen::VectorXcd::Zero(m);
    s.g = Eigen::VectorXcd::Zero(m);
    s.fprime = Eigen::VectorXcd::Zero(m);
    s.gprime = Eigen::VectorXcd::Zero(m);
    return s;
}

}  // namespace

TEST_CASE("add_noise: sigma=0 leaves the spectrum unchanged") {
    const BoundarySpectrum s = flat_spectrum(16);
    const BoundarySpectrum out = add_noise(s, 0.0, 99);
    CHECK(out.f == s.f);
    CHECK(out.g == s.g);
    CHECK(out.fprime == s.fprime);
    CHECK(out.gprime == s.gprime);
}

TEST_CASE("add_noise: deterministic for a fixed seed") {
    const BoundarySpectrum s = flat_spectrum(16);
    const BoundarySpectrum a = add_noise(s, 1e-3, 1234);
    const BoundarySpectrum b = add_noise(s, 1e-3, 1234);
    CHECK(a.f == b.f);
    CHECK(a.g == b.g);
    CHECK(a.fprime == b.fprime);
    CHECK(a.gprime == b.gprime);
    const BoundarySpectrum c = add_noise(s, 1e-3, 1235);
    CHECK(a.f != c.f);
}

TEST_CASE("add_noise: derivative policy does not change the f,g draws") {
    const BoundarySpectrum s = flat_spectrum(16);
    const BoundarySpectrum with = add_noise(s, 1e-3, 7, true);
    const BoundarySpectrum without = add_noise(s, 1e-3, 7, false);
    CHECK(with.f == without.f);
    CHECK(with.g == without.g);
    CHECK(without.fprime == s.fprime);
    CHECK(without.gprime == s.gprime);
    CHECK(with.fprime != s.fprime);
}

TEST_CASE("add_noise: sample variance matches sigma^2") {
    const int m = 2500;  // 10^4 samples across re/im of f and g
    const BoundarySpectrum s = flat_spectrum(m);
    const double sigma = 1e-3;
    const BoundarySpectrum noisy = add_noise(s, sigma, 2024, false);
    double sum2 = 0.0;
    long n = 0;
    for (int i = 0; i < m; ++i) {
        sum2 += std::norm(noisy.f[i]) + std::norm(noisy.g[i]);
        n += 4;
    }
    const double var = sum2 / static_cast<double>(n);
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.05));
}

TEST_CASE("add_noise rejects negative sigma") {
    CHECK_THROWS_AS(add_noise(flat_spectrum(4), -1.0, 0), validation_error);
}

TEST_CASE("relative_error basics") {
    Eigen::VectorXd t(3);
    t << 1.0, 2.0, 3.0;
    CHECK(relative_error(t, t) == 0.0);
    CHECK(relative_error(Eigen::VectorXd::Zero(3).eval(), t) == 1.0);
    CHECK(relative_error((1.1 * t).eval(), t) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(relative_error(t, Eigen::VectorXd::Zero(3).eval()), validation_error);
}

TEST_CASE("wavenumber grids follow the configured rule") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.m = 10;
    cfg.kmax = 10.0;
    cfg.k_rule = KRule::Open;
    const std::vector<double> open = cfg.wavenumbers();
    CHECK(open.front() == doctest::Approx(10.0 / 11.0));
    CHECK(open.back() == doctest::Approx(100.0 / 11.0));
    cfg.k_rule = KRule::Upper;
    const std::vector<double> upper = cfg.wavenumbers();
    CHECK(upper.front() == doctest::Approx(1.0));
    CHECK(upper.back() == doctest::Approx(10.0));
}

TEST_CASE("run_trial: self-referential DA recovers everything") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.reference = cfg.truth;
    cfg.method = Method::DA;
    cfg.sigma = 0.0;
    const TrialResult r = run_trial(cfg, 11);
    CHECK(r.state_error < 1e-6);
    CHECK(r.potential_error < 1e-6);
}

TEST_CASE("run_trial: TRUE benchmark is imperfect but sane") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::TRUE;
    cfg.sigma = 0.0;
    cfg.alpha = 1e-4;
    const TrialResult r = run_trial(cfg, 1);
    CHECK(r.state_error == 0.0);  // true states pass through
    CHECK(r.potential_error > 0.05);
    CHECK(r.potential_error < 1.0);
    CHECK(r.per_k_state_errors.size() == 10);
}

TEST_CASE("run_trial is bitwise deterministic") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::DA;
    cfg.sigma = 1e-3;
    const TrialResult a = run_trial(cfg, 5);
    const TrialResult b = run_trial(cfg, 5);
    CHECK(a.state_error == b.state_error);
    CHECK(a.potential_error == b.potential_error);
    CHECK(a.per_k_state_errors == b.per_k_state_errors);
}

TEST_CASE("monte_carlo: zero noise gives exactly zero std") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::DA;
    cfg.sigma = 0.0;
    cfg.trials = 7;
    const MonteCarloStats st = monte_carlo(cfg);
    CHECK(st.std_u == 0.0);
    CHECK(st.std_q == 0.0);
    CHECK(st.failures == 0);
}

TEST_CASE("monte_carlo counts failing trials instead of dropping them silently") {
    // epsilon far below the noise level makes M+eps*I indefinite in every trial
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::LO;
    cfg.epsilon = 0.0;
    cfg.sigma = 1e-2;
    cfg.trials = 5;
    const ExperimentContext ctx = ExperimentContext::build(cfg);
    bool threw = false;
    int failures = 0;
    try {
        failures = monte_carlo(ctx, cfg).failures;
    } catch (const numerical_error&) {
        threw = true;  // every trial failed
    }
    CHECK((threw || failures > 0));
}

TEST_CASE("monte_carlo means are stable under doubling the trial count") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::DA;
    cfg.sigma = 1e-4;
    cfg.rho = 1e-1;
    const ExperimentContext ctx = ExperimentContext::build(cfg);

    ExperimentConfig a = cfg;
    a.trials = 40;
    a.seed = 100;
    ExperimentConfig b = cfg;
    b.trials = 80;
    b.seed = 1000;  // disjoint seed range
    const MonteCarloStats sa = monte_carlo(ctx, a);
    const MonteCarloStats sb = monte_carlo(ctx, b);
    const double pooled_se = std::sqrt(sa.std_u * sa.std_u / 40.0 + sb.std_u * sb.std_u / 80.0);
    CHECK(std::abs(sa.mean_u - sb.mean_u) < 3.0 * pooled_se);
}

TEST_CASE("single-cell sweep equals monte_carlo") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.method = Method::DA;
    cfg.sigma = 1e-4;
    cfg.trials = 10;
    const SweepSurface surf = parameter_sweep(cfg, {1e-1}, {1e-4});
    ExperimentConfig cell = cfg;
    cell.rho = 1e-1;
    cell.alpha = 1e-4;
    const MonteCarloStats st = monte_carlo(cell);
    CHECK(surf.mean_u(0, 0) == st.mean_u);
    CHECK(surf.mean_q(0, 0) == st.mean_q);
    CHECK(surf.std_q(0, 0) == st.std_q);
    CHECK(surf.argmin_u_i == 0);
    CHECK_THROWS_AS(parameter_sweep(cfg, {}, {1e-4}), validation_error);
}

TEST_CASE("pooled state error goes to zero in the self-reference limit") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.reference = cfg.truth;
    const ExperimentContext ctx = ExperimentContext::build(cfg);
    std::vector<StateEstimate> est;
    for (std::size_t i = 0; i < ctx.ks.size(); ++i)
        est.push_back(true_estimate(ctx.true_states, static_cast<int>(i)));
    CHECK(pooled_state_error(est, ctx.true_states) == 0.0);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = ExperimentConfig::defaults();
    cfg.sigma = -1.0;
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg = ExperimentConfig::defaults();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    cfg = ExperimentConfig::defaults();
    cfg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), validation_error);
    CHECK_THROWS_AS(k_rule_from_string("middle"), validation_error);
    CHECK_THROWS_AS(method_from_string("nope"), validation_error);
}

TEST_CASE("tuned parameter table covers the ladder") {
    for (double sigma : {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        for (Method m : {Method::LO, Method::DA}) {
            const TunedParameters tp = tuned_parameters(sigma, m);
            CHECK(tp.param > 0.0);
            CHECK(tp.alpha > 0.0);
        }
    }
    CHECK_THROWS_AS(tuned_parameters(1e-9, Method::LO), validation_error);
}
