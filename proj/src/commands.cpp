#include "romscat/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "romscat/csv.hpp"
#include "romscat/errors.hpp"
#include "romscat/experiment.hpp"
#include "romscat/version.hpp"

namespace romscat {

namespace {

namespace fs = std::filesystem;

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

RunManifest new_manifest(const std::string& command, const Config& cfg, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.tool_version = kVersion;
    m.seed = seed;
    m.created_utc = utc_timestamp();
    m.config_echo = cfg.resolved_echo();
    return m;
}

void ensure_outdir(const fs::path& outdir) {
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw io_error("cannot create output directory " + outdir.string());
}

void write_state_csv(const fs::path& path, const SpatialGrid& grid,
                     const Eigen::VectorXcd& values) {
    CsvWriter out(path, {"x", "re_u", "im_u"});
    for (int l = 0; l < grid.node_count(); ++l)
        out.row({grid.nodes[static_cast<std::size_t>(l)], values[l].real(), values[l].imag()});
    out.close();
}

void write_potential_csv(const fs::path& path, const SpatialGrid& grid,
                         const Eigen::VectorXd& q) {
    CsvWriter out(path, {"x", "q"});
    for (int l = 0; l < grid.node_count(); ++l)
        out.row({grid.nodes[static_cast<std::size_t>(l)], q[l]});
    out.close();
}

void write_spectrum_csv(const fs::path& path, const BoundarySpectrum& s) {
    CsvWriter out(path, {"k", "re_f", "im_f", "re_g", "im_g", "re_fprime", "im_fprime",
                         "re_gprime", "im_gprime"});
    for (int i = 0; i < s.size(); ++i)
        out.row({s.k[i], s.f[i].real(), s.f[i].imag(), s.g[i].real(), s.g[i].imag(),
                 s.fprime[i].real(), s.fprime[i].imag(), s.gprime[i].real(),
                 s.gprime[i].imag()});
    out.close();
}

std::vector<std::string> table1_header() {
    return {"sigma", "method", "param", "alpha", "mean_u_error", "std_u_error",
            "mean_q_error", "std_q_error", "trials", "failures"};
}

void write_table1_row(CsvWriter& out, double sigma, Method method, double param, double alpha,
                      const MonteCarloStats& st) {
    out.row_raw({csv_format(sigma), method_name(method), csv_format(param), csv_format(alpha),
                 csv_format(st.mean_u), csv_format(st.std_u), csv_format(st.mean_q),
                 csv_format(st.std_q), std::to_string(st.trials),
                 std::to_string(st.failures)});
}

}  // namespace

RunManifest cmd_forward(Config& cfg, const fs::path& outdir, long long seed_override) {
    const ExperimentConfig ec = experiment_from_config(cfg, seed_override);
    cfg.reject_unknown_keys();
    ensure_outdir(outdir);

    const SpatialGrid grid = SpatialGrid::uniform(ec.n);
    const PotentialModel q = ec.truth.build();
    const std::vector<double> ks = ec.wavenumbers();
    const BoundarySpectrum spectrum = generate_spectrum(q, ks, grid);
    const std::vector<StateField> states = solve_states(q, ks, grid);

    RunManifest man = new_manifest("forward", cfg, ec.seed);
    write_spectrum_csv(outdir / "spectrum.csv", spectrum);
    man.add_output(outdir, "spectrum.csv");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string name = "states_" + compact(states[i].k) + ".csv";
        write_state_csv(outdir / name, grid, states[i].values);
        man.add_output(outdir, name);
    }
    write_potential_csv(outdir / "potential_true.csv", grid, q.evaluate(grid));
    man.add_output(outdir, "potential_true.csv");
    man.write(outdir / "manifest.json");
    return man;
}

RunManifest cmd_invert(Config& cfg, const fs::path& outdir, long long seed_override) {
    const ExperimentConfig ec = experiment_from_config(cfg, seed_override);
    cfg.reject_unknown_keys();
    ensure_outdir(outdir);

    const ExperimentContext ctx = ExperimentContext::build(ec);
    const BoundarySpectrum noisy =
        add_noise(ctx.truth_spectrum, ec.sigma, ec.seed, ec.noise_on_derivatives);
    const RomSystem data_rom = assemble_from_data(noisy);
    const std::vector<StateEstimate> estimates = estimate_states(ctx, ec, data_rom, noisy);
    const LSKernel kernel =
        assemble_kernel(ctx.ref_states, estimates, noisy, ctx.ref_spectrum, ctx.qbasis, ctx.grid);
    const PotentialModel dq = tikhonov_solve(kernel, ec.alpha);
    const Eigen::VectorXd q_hat = ctx.q_ref_grid + dq.evaluate(ctx.grid);

    RunManifest man = new_manifest("invert", cfg, ec.seed);

    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const std::string kname = compact(ctx.ks[i]);
        write_state_csv(outdir / ("states_" + kname + ".csv"), ctx.grid, estimates[i].values);
        man.add_output(outdir, "states_" + kname + ".csv");
        write_state_csv(outdir / ("states_true_" + kname + ".csv"), ctx.grid,
                        ctx.true_states[i].values);
        man.add_output(outdir, "states_true_" + kname + ".csv");
    }

    write_potential_csv(outdir / "potential.csv", ctx.grid, q_hat);
    man.add_output(outdir, "potential.csv");
    write_potential_csv(outdir / "potential_true.csv", ctx.grid, ctx.q_true_grid);
    man.add_output(outdir, "potential_true.csv");

    // Data panel: measured data, ROM-interpolated data, and the traces of the
    // estimated states.
    {
        CsvWriter out(outdir / "data_fit.csv",
                      {"k", "re_f_meas", "im_f_meas", "re_g_meas", "im_g_meas", "re_f_rom",
                       "im_f_rom", "re_g_rom", "im_g_rom", "re_f_est", "im_f_est", "re_g_est",
                       "im_g_est"});
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            const long li = static_cast<long>(i);
            const auto [frm, grm] = interpolate_data(data_rom, ctx.ks[i]);
            const Complex fe = estimates[i].values[0];
            const Complex ge = estimates[i].values[estimates[i].values.size() - 1];
            out.row({ctx.ks[i], noisy.f[li].real(), noisy.f[li].imag(), noisy.g[li].real(),
                     noisy.g[li].imag(), frm.real(), frm.imag(), grm.real(), grm.imag(),
                     fe.real(), fe.imag(), ge.real(), ge.imag()});
        }
        out.close();
        man.add_output(outdir, "data_fit.csv");
    }

    {
        CsvWriter out(outdir / "errors.csv", {"metric", "value"});
        out.row_raw({"state_error", csv_format(pooled_state_error(estimates, ctx.true_states))});
        out.row_raw({"potential_error",
                     csv_format(relative_error(q_hat, ctx.q_true_grid))});
        for (std::size_t i = 0; i < estimates.size(); ++i)
            out.row_raw({"state_error_k" + std::to_string(i),
                         csv_format(relative_error(estimates[i].values,
                                                   ctx.true_states[i].values))});
        out.close();
        man.add_output(outdir, "errors.csv");
    }

    man.write(outdir / "manifest.json");
    return man;
}

RunManifest cmd_mc(Config& cfg, const fs::path& outdir, long long seed_override) {
    ExperimentConfig ec = experiment_from_config(cfg, seed_override);
    const std::vector<double> ladder = cfg.get_double_list("mc.sigma_ladder", {ec.sigma});
    const std::vector<std::string> method_names =
        cfg.get_string_list("mc.methods", {method_name(ec.method)});
    const bool use_tuned = cfg.get_bool("mc.use_tuned_parameters", false);
    cfg.reject_unknown_keys();
    ensure_outdir(outdir);

    std::vector<Method> methods;
    methods.reserve(method_names.size());
    for (const auto& s : method_names) methods.push_back(method_from_string(s));

    const ExperimentContext ctx = ExperimentContext::build(ec);
    RunManifest man = new_manifest("mc", cfg, ec.seed);
    CsvWriter out(outdir / "table1.csv", table1_header());
    for (double sigma : ladder) {
        for (Method method : methods) {
            ExperimentConfig run = ec;
            run.sigma = sigma;
            run.method = method;
            if (use_tuned) {
                const TunedParameters tp = tuned_parameters(sigma, method);
                run.alpha = tp.alpha;
                if (method == Method::LO) run.epsilon = tp.param;
                if (method == Method::DA) run.rho = tp.param;
            }
            const MonteCarloStats st = monte_carlo(ctx, run);
            write_table1_row(out, sigma, method, run.method_param(), run.alpha, st);
        }
    }
    out.close();
    man.add_output(outdir, "table1.csv");
    man.write(outdir / "manifest.json");
    return man;
}

RunManifest cmd_sweep(Config& cfg, const fs::path& outdir, long long seed_override) {
    ExperimentConfig ec = experiment_from_config(cfg, seed_override);
    const std::vector<double> default_axis = {1e-4, 1e-3, 1e-2, 1e-1, 1e0, 1e1};
    const std::vector<double> axis1 = cfg.get_double_list("sweep.axis1", default_axis);
    const std::vector<double> axis2 = cfg.get_double_list("sweep.axis2", default_axis);
    cfg.reject_unknown_keys();
    ensure_outdir(outdir);

    const SweepSurface surf = parameter_sweep(ec, axis1, axis2);

    RunManifest man = new_manifest("sweep", cfg, ec.seed);
    const std::string surface_name =
        "sweep_" + compact(ec.sigma) + "_" + method_name(ec.method) + ".csv";
    {
        CsvWriter out(outdir / surface_name,
                      {"param1", "param2", "mean_u_error", "std_u_error", "mean_q_error",
                       "std_q_error"});
        for (std::size_t i = 0; i < axis1.size(); ++i)
            for (std::size_t j = 0; j < axis2.size(); ++j) {
                const int ii = static_cast<int>(i), jj = static_cast<int>(j);
                out.row({axis1[i], axis2[j], surf.mean_u(ii, jj), surf.std_u(ii, jj),
                         surf.mean_q(ii, jj), surf.std_q(ii, jj)});
            }
        out.close();
        man.add_output(outdir, surface_name);
    }
    {
        CsvWriter out(outdir / "sweep_argmin.csv", {"metric", "param1", "param2", "mean"});
        out.row_raw({"u_error", csv_format(axis1[static_cast<std::size_t>(surf.argmin_u_i)]),
                     csv_format(axis2[static_cast<std::size_t>(surf.argmin_u_j)]),
                     csv_format(surf.mean_u(surf.argmin_u_i, surf.argmin_u_j))});
        out.row_raw({"q_error", csv_format(axis1[static_cast<std::size_t>(surf.argmin_q_i)]),
                     csv_format(axis2[static_cast<std::size_t>(surf.argmin_q_j)]),
                     csv_format(surf.mean_q(surf.argmin_q_i, surf.argmin_q_j))});
        out.close();
        man.add_output(outdir, "sweep_argmin.csv");
    }
    man.write(outdir / "manifest.json");
    return man;
}

RunManifest cmd_romcheck(Config& cfg, const fs::path& outdir, long long seed_override) {
    const ExperimentConfig ec = experiment_from_config(cfg, seed_override);
    cfg.reject_unknown_keys();
    ensure_outdir(outdir);

    const SpatialGrid grid = SpatialGrid::uniform(ec.n);
    const PotentialModel q = ec.truth.build();
    const std::vector<double> ks = ec.wavenumbers();
    const BoundarySpectrum spectrum = generate_spectrum(q, ks, grid);
    const std::vector<StateField> states = solve_states(q, ks, grid);

    const RomSystem from_data = assemble_from_data(spectrum);
    const RomSystem direct = assemble_direct(states, q, grid);

    const double s_dev = (from_data.S - direct.S).norm() / direct.S.norm();
    const double m_dev = (from_data.M - direct.M).norm() / direct.M.norm();
    double s_max = 0.0, m_max = 0.0;
    const double s_scale = direct.S.cwiseAbs().maxCoeff();
    const double m_scale = direct.M.cwiseAbs().maxCoeff();
    for (int i = 0; i < from_data.size(); ++i)
        for (int j = 0; j < from_data.size(); ++j) {
            s_max = std::max(s_max, std::abs(from_data.S(i, j) - direct.S(i, j)) / s_scale);
            m_max = std::max(m_max, std::abs(from_data.M(i, j) - direct.M(i, j)) / m_scale);
        }

    RunManifest man = new_manifest("romcheck", cfg, ec.seed);
    CsvWriter out(outdir / "romcheck.csv", {"metric", "value"});
    out.row_raw({"s_frobenius_rel_dev", csv_format(s_dev)});
    out.row_raw({"m_frobenius_rel_dev", csv_format(m_dev)});
    out.row_raw({"s_max_entry_rel_dev", csv_format(s_max)});
    out.row_raw({"m_max_entry_rel_dev", csv_format(m_max)});
    out.close();
    man.add_output(outdir, "romcheck.csv");

    export_rom_csv(from_data, outdir / "rom_data.csv");
    man.add_output(outdir, "rom_data.csv");
    export_rom_csv(direct, outdir / "rom_direct.csv");
    man.add_output(outdir, "rom_direct.csv");

    man.write(outdir / "manifest.json");
    return man;
}

}  // namespace romscat
