#include "romscat/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "romscat/errors.hpp"

namespace romscat {

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("digest: cannot open " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ull;  // FNV-1a 64
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a64:") + hex;
}

void RunManifest::add_output(const std::filesystem::path& outdir,
                             const std::string& relative_path) {
    outputs.push_back({relative_path, file_digest(outdir / relative_path)});
}

void RunManifest::write(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["tool"] = "romscat";
    j["command"] = command;
    j["version"] = tool_version;
    j["seed"] = seed;
    j["created_utc"] = created_utc;
    j["config_echo"] = config_echo;
    nlohmann::json outs = nlohmann::json::array();
    std::vector<ManifestEntry> sorted = outputs;
    std::sort(sorted.begin(), sorted.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    for (const auto& e : sorted) outs.push_back({{"path", e.path}, {"digest", e.digest}});
    j["outputs"] = outs;

    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
    if (!out.good()) throw io_error("failed writing " + path.string());
}

RunManifest RunManifest::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("malformed manifest " + path.string() + ": " + e.what());
    }
    RunManifest m;
    m.command = j.value("command", "");
    m.tool_version = j.value("version", "");
    m.seed = j.value("seed", std::uint64_t{0});
    m.created_utc = j.value("created_utc", "");
    m.config_echo = j.value("config_echo", "");
    for (const auto& e : j.value("outputs", nlohmann::json::array()))
        m.outputs.push_back({e.value("path", ""), e.value("digest", "")});
    return m;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace romscat
