// Command-line front end: forward modelling, two-step inversion, Monte Carlo
// statistics, parameter sweeps and the ROM data-vs-oracle check.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "romscat/commands.hpp"
#include "romscat/config.hpp"
#include "romscat/errors.hpp"
#include "romscat/version.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    long long seed = -1;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (default: out)");
    sub->add_option("--seed", opts.seed, "override the configured noise seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"romscat: data-driven 1D inverse scattering"};
    app.set_version_flag("--version", romscat::kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* forward = app.add_subcommand("forward", "solve the forward problem, write data");
    CLI::App* invert = app.add_subcommand("invert", "two-step inversion from boundary data");
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo error statistics");
    CLI::App* sweep = app.add_subcommand("sweep", "regularization parameter sweep");
    CLI::App* romcheck =
        app.add_subcommand("romcheck", "compare data-driven and direct ROM assembly");
    for (CLI::App* sub : {forward, invert, mc, sweep, romcheck}) add_common(sub, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // CLI misuse is a validation failure
    }

    try {
        romscat::Config cfg = romscat::Config::parse_file(opts.config_path);
        romscat::RunManifest man;
        if (forward->parsed())
            man = romscat::cmd_forward(cfg, opts.out_dir, opts.seed);
        else if (invert->parsed())
            man = romscat::cmd_invert(cfg, opts.out_dir, opts.seed);
        else if (mc->parsed())
            man = romscat::cmd_mc(cfg, opts.out_dir, opts.seed);
        else if (sweep->parsed())
            man = romscat::cmd_sweep(cfg, opts.out_dir, opts.seed);
        else
            man = romscat::cmd_romcheck(cfg, opts.out_dir, opts.seed);
        std::cout << "wrote " << man.outputs.size() << " file(s) to " << opts.out_dir << "\n";
        return 0;
    } catch (const romscat::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const romscat::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const romscat::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
