#ifndef ROMSCAT_CONFIG_HPP
#define ROMSCAT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "romscat/experiment.hpp"

namespace romscat {

// Flat key/value configuration with [section] headers and # comments.
// Typed getters record the resolved value (default or parsed), so a run can
// echo the complete effective configuration into its manifest.
class Config {
public:
    static Config parse_file(const std::filesystem::path& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key, int fallback);
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback);
    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback);

    /// Forces a resolved value (e.g. a command-line seed override) so the
    /// echoed configuration reproduces the run.
    void override_resolved(const std::string& key, const std::string& value);

    /// Throws validation_error listing any key that was never consumed.
    void reject_unknown_keys() const;

    /// Canonical text of every resolved key, parseable by parse_string.
    std::string resolved_echo() const;

private:
    std::string raw_or_default(const std::string& key, const std::string& fallback,
                               bool* from_file);
    void record(const std::string& key, const std::string& value);

    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> resolved_;
    std::set<std::string> consumed_;
    std::string origin_;
};

/// Builds the experiment configuration from `cfg`, consuming all known keys.
/// `seed_override`, when >= 0, wins over the config seed.
ExperimentConfig experiment_from_config(Config& cfg, long long seed_override = -1);

}  // namespace romscat

#endif
