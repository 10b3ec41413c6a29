#ifndef ROMSCAT_COMMANDS_HPP
#define ROMSCAT_COMMANDS_HPP

#include <filesystem>

#include "romscat/config.hpp"
#include "romscat/manifest.hpp"

namespace romscat {

// Library entry points behind the CLI subcommands. Each writes its CSV
// artifacts plus manifest.json into `outdir` and returns the manifest.

RunManifest cmd_forward(Config& cfg, const std::filesystem::path& outdir,
                        long long seed_override = -1);
RunManifest cmd_invert(Config& cfg, const std::filesystem::path& outdir,
                       long long seed_override = -1);
RunManifest cmd_mc(Config& cfg, const std::filesystem::path& outdir,
                   long long seed_override = -1);
RunManifest cmd_sweep(Config& cfg, const std::filesystem::path& outdir,
                      long long seed_override = -1);
RunManifest cmd_romcheck(Config& cfg, const std::filesystem::path& outdir,
                         long long seed_override = -1);

}  // namespace romscat

#endif
