#include "romscat/experiment.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "romscat/errors.hpp"
#include "romscat/log.hpp"
#include "romscat/rng.hpp"

namespace romscat {

KRule k_rule_from_string(const std::string& s) {
    if (s == "open") return KRule::Open;
    if (s == "upper") return KRule::Upper;
    throw validation_error("unknown k_rule '" + s + "' (expected open or upper)");
}

const char* k_rule_name(KRule r) { return r == KRule::Open ? "open" : "upper"; }

PotentialModel PotentialSpec::build() const {
    if (kind == "zero") return PotentialModel::zero();
    if (kind == "gaussian") {
        if (amplitudes.size() != centers.size() || centers.size() != widths.size())
            throw validation_error(
                "potential spec: amplitudes, centers and widths must have equal length");
        std::vector<GaussianBump> bumps;
        bumps.reserve(centers.size());
        for (std::size_t i = 0; i < centers.size(); ++i)
            bumps.push_back({centers[i], widths[i]});
        return PotentialModel::gaussian_bumps(amplitudes, bumps, margin);
    }
    if (kind == "piecewise") {
        if (values.empty()) throw validation_error("potential spec: piecewise needs values");
        return PotentialModel::piecewise_constant(
            Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<long>(values.size())),
            margin);
    }
    throw validation_error("potential spec: unknown kind '" + kind +
                           "' (expected zero, gaussian or piecewise)");
}

std::vector<double> ExperimentConfig::wavenumbers() const {
    std::vector<double> ks(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        ks[static_cast<std::size_t>(i)] = k_rule == KRule::Open
                                              ? (i + 1) * kmax / (m + 1)
                                              : (i + 1) * kmax / m;
    }
    return ks;
}

double ExperimentConfig::method_param() const {
    if (method == Method::LO) return epsilon;
    if (method == Method::DA) return rho;
    return 0.0;
}

void ExperimentConfig::validate() const {
    if (m < 1) throw validation_error("config: m must be at least 1");
    if (n < 2) throw validation_error("config: n must be at least 2");
    if (!(kmax > 0.0)) throw validation_error("config: kmax must be positive");
    if (sigma < 0.0) throw validation_error("config: sigma must be nonnegative");
    if (trials < 1) throw validation_error("config: trials must be at least 1");
    if (nq < 1) throw validation_error("config: nq must be at least 1");
    if (epsilon < 0.0) throw validation_error("config: epsilon must be nonnegative");
    if (!(rho > 0.0)) throw validation_error("config: rho must be positive");
    if (alpha < 0.0) throw validation_error("config: alpha must be nonnegative");
}

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig cfg;
    cfg.truth.kind = "gaussian";
    cfg.truth.amplitudes = {4.0};
    cfg.truth.centers = {0.5};
    cfg.truth.widths = {0.08};
    cfg.truth.margin = 0.1;
    cfg.reference.kind = "zero";
    return cfg;
}

ExperimentContext ExperimentContext::build(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentContext ctx;
    ctx.grid = SpatialGrid::uniform(cfg.n);
    ctx.ks = cfg.wavenumbers();
    ctx.q_true = cfg.truth.build();
    ctx.q_ref = cfg.reference.build();
    ctx.q_true_grid = ctx.q_true.evaluate(ctx.grid);
    ctx.q_ref_grid = ctx.q_ref.evaluate(ctx.grid);
    ctx.true_states = solve_states(ctx.q_true, ctx.ks, ctx.grid);
    ctx.ref_states = solve_states(ctx.q_ref, ctx.ks, ctx.grid);
    ctx.truth_spectrum = generate_spectrum(ctx.q_true, ctx.ks, ctx.grid);
    ctx.ref_spectrum = generate_spectrum(ctx.q_ref, ctx.ks, ctx.grid);
    ctx.ref_rom = assemble_from_data(ctx.ref_spectrum);
    ctx.qbasis = PotentialModel::piecewise_constant(Eigen::VectorXd::Zero(cfg.nq));
    return ctx;
}

double relative_error(const Eigen::VectorXd& est, const Eigen::VectorXd& truth) {
    if (est.size() != truth.size()) throw validation_error("relative_error: size mismatch");
    const double tn = truth.norm();
    if (!(tn > 0.0)) throw validation_error("relative_error: zero-norm truth");
    return (est - truth).norm() / tn;
}

double relative_error(const Eigen::VectorXcd& est, const Eigen::VectorXcd& truth) {
    if (est.size() != truth.size()) throw validation_error("relative_error: size mismatch");
    const double tn = truth.norm();
    if (!(tn > 0.0)) throw validation_error("relative_error: zero-norm truth");
    return (est - truth).norm() / tn;
}

double pooled_state_error(const std::vector<StateEstimate>& est,
                          const std::vector<StateField>& truth) {
    if (est.size() != truth.size()) throw validation_error("pooled_state_error: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        num += (est[i].values - truth[i].values).squaredNorm();
        den += truth[i].values.squaredNorm();
    }
    if (!(den > 0.0)) throw validation_error("pooled_state_error: zero-norm truth");
    return std::sqrt(num / den);
}

BoundarySpectrum add_noise(const BoundarySpectrum& spectrum, double sigma, std::uint64_t seed,
                           bool on_derivatives) {
    if (sigma < 0.0) throw validation_error("add_noise: sigma must be nonnegative");
    BoundarySpectrum out = spectrum;
    if (sigma == 0.0) return out;

    GaussianSampler normal(seed);
    auto perturb = [&](Eigen::VectorXcd& v) {
        for (int i = 0; i < v.size(); ++i)
            v[i] += Complex(sigma * normal(), sigma * normal());
    };
    perturb(out.f);
    perturb(out.g);
    if (on_derivatives) {
        perturb(out.fprime);
        perturb(out.gprime);
    }
    return out;
}

std::vector<StateEstimate> estimate_states(const ExperimentContext& ctx,
                                           const ExperimentConfig& cfg,
                                           const RomSystem& data_rom,
                                           const BoundarySpectrum& noisy) {
    std::vector<StateEstimate> estimates;
    estimates.reserve(ctx.ks.size());
    for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
        const double k = ctx.ks[i];
        try {
            switch (cfg.method) {
                case Method::LO:
                    estimates.push_back(
                        lo_estimate(data_rom, ctx.ref_rom, ctx.ref_states, cfg.epsilon, k));
                    break;
                case Method::DA:
                    estimates.push_back(da_estimate(data_rom, ctx.ref_spectrum, ctx.ref_states,
                                                    cfg.rho, k, noisy.f[static_cast<long>(i)],
                                                    noisy.g[static_cast<long>(i)]));
                    break;
                case Method::BORN:
                    estimates.push_back(born_estimate(ctx.ref_states, static_cast<int>(i)));
                    break;
                case Method::TRUE:
                    estimates.push_back(true_estimate(ctx.true_states, static_cast<int>(i)));
                    break;
            }
        } catch (const numerical_error& e) {
            throw numerical_error("state_estimation[" + std::string(method_name(cfg.method)) +
                                  "] at k=" + std::to_string(k) + ": " + e.what());
        }
    }
    return estimates;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed) {
    return run_trial(ExperimentContext::build(cfg), cfg, seed);
}

TrialResult run_trial(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                      std::uint64_t seed) {
    const BoundarySpectrum noisy =
        add_noise(ctx.truth_spectrum, cfg.sigma, seed, cfg.noise_on_derivatives);
    RomSystem data_rom;
    try {
        data_rom = assemble_from_data(noisy);
    } catch (const std::runtime_error& e) {
        throw numerical_error(std::string("rom_assembly: ") + e.what());
    }

    const std::vector<StateEstimate> estimates = estimate_states(ctx, cfg, data_rom, noisy);

    LSKernel kernel;
    PotentialModel dq;
    try {
        kernel = assemble_kernel(ctx.ref_states, estimates, noisy, ctx.ref_spectrum, ctx.qbasis,
                                 ctx.grid);
        dq = tikhonov_solve(kernel, cfg.alpha);
    } catch (const numerical_error& e) {
        throw numerical_error(std::string("potential_inversion: ") + e.what());
    }

    TrialResult result;
    result.state_error = pooled_state_error(estimates, ctx.true_states);
    result.per_k_state_errors.resize(static_cast<long>(ctx.ks.size()));
    for (std::size_t i = 0; i < ctx.ks.size(); ++i)
        result.per_k_state_errors[static_cast<long>(i)] =
            relative_error(estimates[i].values, ctx.true_states[i].values);
    const Eigen::VectorXd q_hat = ctx.q_ref_grid + dq.evaluate(ctx.grid);
    result.potential_error = relative_error(q_hat, ctx.q_true_grid);
    return result;
}

MonteCarloStats monte_carlo(const ExperimentConfig& cfg) {
    return monte_carlo(ExperimentContext::build(cfg), cfg);
}

MonteCarloStats monte_carlo(const ExperimentContext& ctx, const ExperimentConfig& cfg) {
    MonteCarloStats stats;
    stats.trials = cfg.trials;

    // Noise-free trials are all identical; run one so std is exactly zero.
    if (cfg.sigma == 0.0) {
        const TrialResult r = run_trial(ctx, cfg, cfg.seed);
        stats.mean_u = r.state_error;
        stats.mean_q = r.potential_error;
        stats.std_u = 0.0;
        stats.std_q = 0.0;
        return stats;
    }

    std::vector<double> us, qs;
    us.reserve(static_cast<std::size_t>(cfg.trials));
    qs.reserve(static_cast<std::size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t) {
        try {
            const TrialResult r = run_trial(ctx, cfg, cfg.seed + static_cast<std::uint64_t>(t));
            us.push_back(r.state_error);
            qs.push_back(r.potential_error);
        } catch (const numerical_error& e) {
            ++stats.failures;
            warn("monte_carlo: trial " + std::to_string(t) + " failed: " + e.what());
        }
    }
    if (us.empty()) throw numerical_error("monte_carlo: every trial failed");

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto std_of = [](const std::vector<double>& v, double mu) {
        if (v.size() < 2) return 0.0;
        double s = 0.0;
        for (double x : v) s += (x - mu) * (x - mu);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    stats.mean_u = mean_of(us);
    stats.mean_q = mean_of(qs);
    stats.std_u = std_of(us, stats.mean_u);
    stats.std_q = std_of(qs, stats.mean_q);
    return stats;
}

SweepSurface parameter_sweep(const ExperimentConfig& cfg, const std::vector<double>& axis1,
                             const std::vector<double>& axis2) {
    if (axis1.empty() || axis2.empty())
        throw validation_error("parameter_sweep: axes must be nonempty");
    const ExperimentContext ctx = ExperimentContext::build(cfg);

    SweepSurface surf;
    surf.axis1 = axis1;
    surf.axis2 = axis2;
    const int n1 = static_cast<int>(axis1.size());
    const int n2 = static_cast<int>(axis2.size());
    surf.mean_u.resize(n1, n2);
    surf.std_u.resize(n1, n2);
    surf.mean_q.resize(n1, n2);
    surf.std_q.resize(n1, n2);

    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            ExperimentConfig cell = cfg;
            if (cfg.method == Method::LO)
                cell.epsilon = axis1[static_cast<std::size_t>(i)];
            else
                cell.rho = axis1[static_cast<std::size_t>(i)];
            cell.alpha = axis2[static_cast<std::size_t>(j)];
            try {
                const MonteCarloStats st = monte_carlo(ctx, cell);
                surf.mean_u(i, j) = st.mean_u;
                surf.std_u(i, j) = st.std_u;
                surf.mean_q(i, j) = st.mean_q;
                surf.std_q(i, j) = st.std_q;
            } catch (const numerical_error& e) {
                // a cell where every trial failed stays on the surface as NaN
                warn("parameter_sweep: cell (" + std::to_string(axis1[static_cast<std::size_t>(i)]) +
                     ", " + std::to_string(axis2[static_cast<std::size_t>(j)]) +
                     ") produced no statistics: " + e.what());
                const double nan = std::numeric_limits<double>::quiet_NaN();
                surf.mean_u(i, j) = nan;
                surf.std_u(i, j) = nan;
                surf.mean_q(i, j) = nan;
                surf.std_q(i, j) = nan;
            }
        }
    }
    auto argmin_skipping_nan = [&](const Eigen::MatrixXd& mat, int& ai, int& aj) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                if (std::isfinite(mat(i, j)) && mat(i, j) < best) {
                    best = mat(i, j);
                    ai = i;
                    aj = j;
                }
        if (!std::isfinite(best))
            throw numerical_error("parameter_sweep: every cell failed");
    };
    argmin_skipping_nan(surf.mean_u, surf.argmin_u_i, surf.argmin_u_j);
    argmin_skipping_nan(surf.mean_q, surf.argmin_q_i, surf.argmin_q_j);
    return surf;
}

TunedParameters tuned_parameters(double sigma, Method method) {
    // Selected by parameter_sweep on the default experiment, argmin of the
    // mean q-error per noise level (100 seeded realizations), restricted to
    // cells with no failed trials.
    struct Row {
        double sigma;
        Method method;
        double param;
        double alpha;
    };
    static const Row table[] = {
        {0.0, Method::LO, 1e-4, 1e-4},   {0.0, Method::DA, 1e-2, 1e-4},
        {0.0, Method::TRUE, 0.0, 1e-4},  {0.0, Method::BORN, 0.0, 1e-4},
        {1e-6, Method::LO, 1e-4, 1e-4},  {1e-6, Method::DA, 1e-2, 1e-4},
        {1e-6, Method::TRUE, 0.0, 1e-4}, {1e-6, Method::BORN, 0.0, 1e-4},
        {1e-5, Method::LO, 1e-4, 1e-4},  {1e-5, Method::DA, 1e-2, 1e-4},
        {1e-5, Method::TRUE, 0.0, 1e-4}, {1e-5, Method::BORN, 0.0, 1e-4},
        {1e-4, Method::LO, 1e-3, 1e-4},  {1e-4, Method::DA, 1e-1, 1e-4},
        {1e-4, Method::TRUE, 0.0, 1e-4}, {1e-4, Method::BORN, 0.0, 1e-4},
        {1e-3, Method::LO, 1e-2, 1e-4},  {1e-3, Method::DA, 1e-1, 1e-4},
        {1e-3, Method::TRUE, 0.0, 1e-4}, {1e-3, Method::BORN, 0.0, 1e-4},
        {1e-2, Method::LO, 1e-1, 1e-4},  {1e-2, Method::DA, 1e0, 1e-4},
        {1e-2, Method::TRUE, 0.0, 1e-4}, {1e-2, Method::BORN, 0.0, 1e-4},
    };
    for (const Row& r : table) {
        const bool sigma_match = (sigma == 0.0 && r.sigma == 0.0) ||
                                 (sigma > 0.0 && r.sigma > 0.0 &&
                                  std::abs(std::log10(sigma / r.sigma)) < 0.25);
        if (sigma_match && r.method == method) return {r.param, r.alpha};
    }
    throw validation_error("tuned_parameters: no tuned entry for sigma=" + std::to_string(sigma) +
                           ", method=" + method_name(method));
}

}  // namespace romscat
