// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "romscat/commands.hpp"
#include "romscat/config.hpp"
#include "romscat/experiment.hpp"
#include "romscat/lanczos.hpp"

using namespace romscat;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct LadderStats {
    double sigma;
    MonteCarloStats lo, da;
};

std::string default_config_text() {
    return "[problem]\n"
           "n = 1000\n"
           "m = 10\n"
           "kmax = 10.0\n"
           "[truth]\n"
           "kind = gaussian\n"
           "amplitudes = 4.0\n"
           "centers = 0.5\n"
           "widths = 0.08\n"
           "support_margin = 0.1\n"
           "[inversion]\n"
           "method = DA\n"
           "rho = 1e-2\n"
           "alpha = 1e-4\n"
           "nq = 100\n"
           "[noise]\n"
           "sigma = 1e-4\n"
           "seed = 17\n";
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const ExperimentConfig base = ExperimentConfig::defaults();
    const ExperimentContext ctx = ExperimentContext::build(base);
    const RomSystem data_rom = assemble_from_data(ctx.truth_spectrum);
    const int m = data_rom.size();

    // 1. Lemma-vs-oracle equivalence under 5 seconds
    try {
        const auto t0 = clock::now();
        const RomSystem direct = assemble_direct(ctx.true_states, ctx.q_true, ctx.grid);
        const double s_dev = (data_rom.S - direct.S).norm() / direct.S.norm();
        const double m_dev = (data_rom.M - direct.M).norm() / direct.M.norm();
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        report(1, "data-driven assembly matches the Gram oracle",
               s_dev < 1e-6 && m_dev < 1e-6 && secs < 5.0,
               fmt("S dev %.2e, M dev %.2e, %.2f s", s_dev, m_dev, secs));
    } catch (const std::exception& e) {
        report(1, "data-driven assembly matches the Gram oracle", false, e.what());
    }

    // 2. interpolation property c(k_j) = e_j
    try {
        double worst = 0.0;
        for (int j = 0; j < m; ++j) {
            const RomCoefficients c = rom_solve(data_rom, ctx.ks[static_cast<std::size_t>(j)]);
            worst = std::max(worst,
                             (c.c - Eigen::VectorXcd::Unit(m, j)).cwiseAbs().maxCoeff());
        }
        report(2, "coefficients interpolate the snapshots", worst < 1e-8,
               fmt("max |c(k_j) - e_j| = %.2e", worst));
    } catch (const std::exception& e) {
        report(2, "coefficients interpolate the snapshots", false, e.what());
    }

    // 3. structural invariants of S, M, B
    try {
        const double s_asym = (data_rom.S - data_rom.S.adjoint()).norm() / data_rom.S.norm();
        const double m_asym = (data_rom.M - data_rom.M.adjoint()).norm() / data_rom.M.norm();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(data_rom.B);
        const double min_eig = es.eigenvalues().minCoeff();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(data_rom.B);
        const double third = svd.singularValues()(2) / svd.singularValues()(0);
        const bool ok = s_asym < 1e-10 && m_asym < 1e-10 &&
                        min_eig > -1e-12 * es.eigenvalues().maxCoeff() && third < 1e-12;
        report(3, "S, M Hermitian and B Hermitian PSD of rank <= 2", ok,
               fmt("asym %.1e/%.1e, sv3/sv1 %.1e", s_asym, m_asym, third));
    } catch (const std::exception& e) {
        report(3, "S, M Hermitian and B Hermitian PSD of rank <= 2", false, e.what());
    }

    // 4. Lanczos contract for epsilon in {1e-3, 1e-2, 1e-1}
    try {
        bool ok = true;
        std::string detail;
        for (double eps : {1e-3, 1e-2, 1e-1}) {
            const LanczosFactor f =
                lanczos_m_orthogonal(data_rom.S, data_rom.M, eps, data_rom.f.conjugate());
            const Eigen::MatrixXcd N =
                data_rom.M + eps * Eigen::MatrixXcd::Identity(m, m);
            const double orth = (f.Q.adjoint() * N * f.Q -
                                 Eigen::MatrixXcd::Identity(f.rank, f.rank))
                                    .cwiseAbs()
                                    .maxCoeff();
            const Eigen::MatrixXcd QSQ = f.Q.adjoint() * data_rom.S * f.Q;
            double offtri = 0.0;
            for (int i = 0; i < f.rank; ++i)
                for (int j = 0; j < f.rank; ++j)
                    if (std::abs(i - j) > 1) offtri = std::max(offtri, std::abs(QSQ(i, j)));
            offtri /= f.T.norm();
            ok = ok && orth < 1e-8 && offtri < 1e-8;
            detail += fmt("eps %.0e: orth %.1e tri %.1e; ", eps, orth, offtri);
        }
        report(4, "Lanczos factor is (M+eI)-orthogonal with tridiagonal T", ok, detail);
    } catch (const std::exception& e) {
        report(4, "Lanczos factor is (M+eI)-orthogonal with tridiagonal T", false, e.what());
    }

    // 5. self-reference recovery
    try {
        ExperimentConfig self = base;
        self.reference = self.truth;
        self.sigma = 0.0;
        const ExperimentContext sctx = ExperimentContext::build(self);
        const RomSystem srom = assemble_from_data(sctx.truth_spectrum);
        std::vector<StateEstimate> lo_est, da_est;
        for (std::size_t j = 0; j < sctx.ks.size(); ++j) {
            lo_est.push_back(lo_estimate(srom, sctx.ref_rom, sctx.ref_states, 0.0, sctx.ks[j]));
            da_est.push_back(da_estimate(srom, sctx.ref_spectrum, sctx.ref_states, 1.0,
                                         sctx.ks[j], sctx.truth_spectrum.f[static_cast<long>(j)],
                                         sctx.truth_spectrum.g[static_cast<long>(j)]));
        }
        const double lo_err = pooled_state_error(lo_est, sctx.true_states);
        const double da_err = pooled_state_error(da_est, sctx.true_states);
        report(5, "self-referential LO and DA recover the states", lo_err < 1e-6 && da_err < 1e-6,
               fmt("LO %.2e, DA %.2e", lo_err, da_err));
    } catch (const std::exception& e) {
        report(5, "self-referential LO and DA recover the states", false, e.what());
    }

    // 6. sensitivity oracle at every measurement wavenumber
    try {
        const double delta = 1e-4;
        double worst = 0.0;
        for (double k : ctx.ks) {
            const StateField u = solve_bvp(ctx.q_true, k, ctx.grid);
            const auto [fp, gp] = boundary_trace(solve_sensitivity(ctx.q_true, k, u, ctx.grid));
            const auto [fm1, gm1] = boundary_trace(solve_bvp(ctx.q_true, k - delta, ctx.grid));
            const auto [fp1, gp1] = boundary_trace(solve_bvp(ctx.q_true, k + delta, ctx.grid));
            const Complex fd_f = (fp1 - fm1) / (2.0 * delta);
            const Complex fd_g = (gp1 - gm1) / (2.0 * delta);
            worst = std::max(worst, std::abs(fp - fd_f) / std::abs(fd_f));
            worst = std::max(worst, std::abs(gp - fd_g) / std::abs(fd_g));
        }
        report(6, "sensitivity traces match finite differences in k", worst < 1e-5,
               fmt("worst relative deviation %.2e", worst));
    } catch (const std::exception& e) {
        report(6, "sensitivity traces match finite differences in k", false, e.what());
    }

    // 7/9/10 share the tuned-parameter noise ladder (100 trials per cell)
    std::vector<LadderStats> ladder;
    bool ladder_ok = true;
    std::string ladder_err;
    const auto ladder_t0 = clock::now();
    try {
        for (double sigma : {1e-6, 1e-5, 1e-4, 1e-3}) {
            LadderStats row;
            row.sigma = sigma;
            ExperimentConfig lo = base;
            lo.method = Method::LO;
            lo.sigma = sigma;
            lo.trials = 100;
            const TunedParameters tl = tuned_parameters(sigma, Method::LO);
            lo.epsilon = tl.param;
            lo.alpha = tl.alpha;
            row.lo = monte_carlo(ctx, lo);

            ExperimentConfig da = base;
            da.method = Method::DA;
            da.sigma = sigma;
            da.trials = 100;
            const TunedParameters td = tuned_parameters(sigma, Method::DA);
            da.rho = td.param;
            da.alpha = td.alpha;
            row.da = monte_carlo(ctx, da);
            ladder.push_back(row);
        }
    } catch (const std::exception& e) {
        ladder_ok = false;
        ladder_err = e.what();
    }
    const double ladder_secs = std::chrono::duration<double>(clock::now() - ladder_t0).count();

    // 7. method ordering with a factor-5 margin
    if (ladder_ok) {
        bool ok = true;
        std::string detail;
        for (const auto& row : ladder) {
            ok = ok && row.da.mean_u < row.lo.mean_u / 5.0;
            detail += fmt("s=%.0e LO %.2e DA %.2e (x%.1f); ", row.sigma, row.lo.mean_u,
                          row.da.mean_u, row.lo.mean_u / row.da.mean_u);
        }
        report(7, "mean DA state error beats LO by a factor of five", ok,
               detail + fmt("ladder %.0f s", ladder_secs));
    } else {
        report(7, "mean DA state error beats LO by a factor of five", false, ladder_err);
    }

    // 8. benchmark ordering at sigma = 0
    try {
        auto q_error = [&](Method method) {
            ExperimentConfig cfg = base;
            cfg.method = method;
            cfg.sigma = 0.0;
            cfg.trials = 1;
            const TunedParameters tp = tuned_parameters(0.0, method);
            cfg.alpha = tp.alpha;
            if (method == Method::LO) cfg.epsilon = tp.param;
            if (method == Method::DA) cfg.rho = tp.param;
            return run_trial(ctx, cfg, cfg.seed).potential_error;
        };
        const double e_true = q_error(Method::TRUE);
        const double e_da = q_error(Method::DA);
        const double e_born = q_error(Method::BORN);
        report(8, "potential error orders TRUE <= DA < BORN",
               e_true <= e_da && e_da < e_born,
               fmt("TRUE %.3f, DA %.3f, BORN %.3f", e_true, e_da, e_born));
    } catch (const std::exception& e) {
        report(8, "potential error orders TRUE <= DA < BORN", false, e.what());
    }

    // 9. q-error nondecreasing in sigma within two pooled standard errors
    if (ladder_ok) {
        bool ok = true;
        std::string detail;
        for (int step = 0; step + 1 < static_cast<int>(ladder.size()); ++step) {
            auto check_method = [&](const MonteCarloStats& a, const MonteCarloStats& b,
                                    const char* name) {
                const double tol = 2.0 * std::sqrt(a.std_q * a.std_q / a.trials +
                                                   b.std_q * b.std_q / b.trials);
                if (b.mean_q < a.mean_q - tol) {
                    ok = false;
                    detail += fmt("%s drops %.1e > tol %.1e at step %d; ", name,
                                  a.mean_q - b.mean_q, tol, step);
                }
            };
            check_method(ladder[static_cast<std::size_t>(step)].lo,
                         ladder[static_cast<std::size_t>(step + 1)].lo, "LO");
            check_method(ladder[static_cast<std::size_t>(step)].da,
                         ladder[static_cast<std::size_t>(step + 1)].da, "DA");
        }
        std::string lo_chain = "LO q:", da_chain = " DA q:";
        for (const auto& row : ladder) {
            lo_chain += fmt(" %.4f", row.lo.mean_q);
            da_chain += fmt(" %.4f", row.da.mean_q);
        }
        report(9, "mean q-error is nondecreasing in sigma", ok, detail + lo_chain + da_chain);
    } else {
        report(9, "mean q-error is nondecreasing in sigma", false, ladder_err);
    }

    // 10. DA stability: q-error std at sigma=1e-4
    if (ladder_ok) {
        const auto& row = ladder[2];  // sigma = 1e-4
        const bool ok = row.da.std_q < row.lo.std_q / 10.0;
        report(10, "DA q-error std beats LO by a factor of ten", ok,
               fmt("LO std %.2e, DA std %.2e (x%.1f)", row.lo.std_q, row.da.std_q,
                   row.lo.std_q / row.da.std_q));
    } else {
        report(10, "DA q-error std beats LO by a factor of ten", false, ladder_err);
    }

    // 11. determinism and manifest round trip
    try {
        const fs::path d1 = fs::temp_directory_path() / "romscat_acc_det1";
        const fs::path d2 = fs::temp_directory_path() / "romscat_acc_det2";
        const fs::path d3 = fs::temp_directory_path() / "romscat_acc_det3";
        for (const auto& d : {d1, d2, d3}) fs::remove_all(d);

        Config c1 = Config::parse_string(default_config_text());
        Config c2 = Config::parse_string(default_config_text());
        const RunManifest m1 = cmd_invert(c1, d1);
        const RunManifest m2 = cmd_invert(c2, d2);
        bool ok = m1.outputs.size() == m2.outputs.size();
        for (std::size_t i = 0; ok && i < m1.outputs.size(); ++i)
            ok = m1.outputs[i].path == m2.outputs[i].path &&
                 m1.outputs[i].digest == m2.outputs[i].digest;

        const RunManifest stored = RunManifest::read(d1 / "manifest.json");
        Config c3 = Config::parse_string(stored.config_echo, "manifest-echo");
        const RunManifest m3 = cmd_invert(c3, d3);
        bool rerun_ok = m1.outputs.size() == m3.outputs.size();
        for (std::size_t i = 0; rerun_ok && i < m1.outputs.size(); ++i)
            rerun_ok = m1.outputs[i].digest == m3.outputs[i].digest;

        report(11, "seeded runs and manifest re-runs are digest-identical", ok && rerun_ok,
               fmt("%zu outputs compared", m1.outputs.size()));
        for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
    } catch (const std::exception& e) {
        report(11, "seeded runs and manifest re-runs are digest-identical", false, e.what());
    }

    // 12. Tikhonov properties
    try {
        std::vector<StateEstimate> est;
        for (std::size_t i = 0; i < ctx.ks.size(); ++i)
            est.push_back(true_estimate(ctx.true_states, static_cast<int>(i)));
        LSKernel kern = assemble_kernel(ctx.ref_states, est, ctx.truth_spectrum,
                                        ctx.ref_spectrum, ctx.qbasis, ctx.grid);
        LSKernel zero = kern;
        zero.rhs.setZero();
        const bool zero_ok = tikhonov_solve(zero, 1e-3).coefficients().norm() == 0.0;

        bool mono_ok = true;
        double prev_norm = std::numeric_limits<double>::infinity();
        double prev_misfit = -1.0;
        for (double alpha : {1e-4, 1e-3, 1e-2, 1e-1, 1e0, 1e1, 1e2}) {
            const PotentialModel dq = tikhonov_solve(kern, alpha);
            const double nrm = dq.coefficients().norm();
            const double misfit =
                (kern.K * dq.coefficients().cast<Complex>() - kern.rhs).norm();
            mono_ok = mono_ok && nrm <= prev_norm * (1.0 + 1e-12) &&
                      misfit >= prev_misfit * (1.0 - 1e-12);
            prev_norm = nrm;
            prev_misfit = misfit;
        }
        report(12, "Tikhonov zero-rhs and monotonicity properties", zero_ok && mono_ok,
               fmt("zero rhs -> zero dq: %s, monotone over alpha: %s",
                   zero_ok ? "yes" : "no", mono_ok ? "yes" : "no"));
    } catch (const std::exception& e) {
        report(12, "Tikhonov zero-rhs and monotonicity properties", false, e.what());
    }

    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
