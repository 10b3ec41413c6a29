#ifndef ROMSCAT_MANIFEST_HPP
#define ROMSCAT_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace romscat {

/// FNV-1a 64-bit digest of a file's bytes, as a fixed-width hex string.
std::string file_digest(const std::filesystem::path& path);

std::string utc_timestamp();

struct ManifestEntry {
    std::string path;    // relative to the output directory
    std::string digest;  // "fnv1a64:<hex>"
};

// Run provenance: the resolved configuration, the seed, and a digest of every
// emitted file. Re-running the embedded config must reproduce the digests.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::uint64_t seed = 0;
    std::string created_utc;
    std::string config_echo;
    std::vector<ManifestEntry> outputs;

    void add_output(const std::filesystem::path& outdir, const std::string& relative_path);
    void write(const std::filesystem::path& path) const;
    static RunManifest read(const std::filesystem::path& path);
};

}  // namespace romscat

#endif
