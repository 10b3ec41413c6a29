#include "romscat/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "romscat/csv.hpp"
#include "romscat/errors.hpp"

namespace romscat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    const std::string last = trim(cur);
    if (!last.empty() || !items.empty()) items.push_back(last);
    return items;
}

}  // namespace

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path.string());
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw validation_error(origin + ":" + std::to_string(lineno) +
                                       ": malformed section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw validation_error(origin + ":" + std::to_string(lineno) +
                                       ": empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw validation_error(origin + ":" + std::to_string(lineno) +
                                   ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw validation_error(origin + ":" + std::to_string(lineno) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full))
            throw validation_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                   full + "'");
        cfg.values_[full] = value;
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::raw_or_default(const std::string& key, const std::string& fallback,
                                   bool* from_file) {
    consumed_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) {
        if (from_file) *from_file = false;
        return fallback;
    }
    if (from_file) *from_file = true;
    return it->second;
}

void Config::record(const std::string& key, const std::string& value) {
    resolved_[key] = value;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    const std::string v = raw_or_default(key, fallback, nullptr);
    record(key, v);
    return v;
}

double Config::get_double(const std::string& key, double fallback) {
    bool from_file = false;
    const std::string v = raw_or_default(key, "", &from_file);
    if (!from_file) {
        record(key, csv_format(fallback));
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        record(key, csv_format(d));
        return d;
    } catch (const std::exception&) {
        throw validation_error(origin_ + ": key '" + key + "': expected a number, got '" + v +
                               "'");
    }
}

int Config::get_int(const std::string& key, int fallback) {
    bool from_file = false;
    const std::string v = raw_or_default(key, "", &from_file);
    if (!from_file) {
        record(key, std::to_string(fallback));
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        record(key, std::to_string(i));
        return i;
    } catch (const std::exception&) {
        throw validation_error(origin_ + ": key '" + key + "': expected an integer, got '" + v +
                               "'");
    }
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t fallback) {
    bool from_file = false;
    const std::string v = raw_or_default(key, "", &from_file);
    if (!from_file) {
        record(key, std::to_string(fallback));
        return fallback;
    }
    try {
        std::size_t pos = 0;
        const std::uint64_t u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        record(key, std::to_string(u));
        return u;
    } catch (const std::exception&) {
        throw validation_error(origin_ + ": key '" + key +
                               "': expected a nonnegative integer, got '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) {
    bool from_file = false;
    std::string v = raw_or_default(key, "", &from_file);
    if (!from_file) {
        record(key, fallback ? "true" : "false");
        return fallback;
    }
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        record(key, "true");
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        record(key, "false");
        return false;
    }
    throw validation_error(origin_ + ": key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) {
    bool from_file = false;
    const std::string v = raw_or_default(key, "", &from_file);
    std::vector<double> out;
    if (!from_file) {
        out = fallback;
    } else {
        for (const std::string& item : split_list(v)) {
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw validation_error(origin_ + ": key '" + key + "': expected numbers, got '" +
                                       item + "'");
            }
        }
    }
    std::string echo;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i) echo += ",";
        echo += csv_format(out[i]);
    }
    record(key, echo);
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key,
                                                 const std::vector<std::string>& fallback) {
    bool from_file = false;
    const std::string v = raw_or_default(key, "", &from_file);
    std::vector<std::string> out = from_file ? split_list(v) : fallback;
    std::string echo;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i) echo += ",";
        echo += out[i];
    }
    record(key, echo);
    return out;
}

void Config::override_resolved(const std::string& key, const std::string& value) {
    consumed_.insert(key);
    resolved_[key] = value;
}

void Config::reject_unknown_keys() const {
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (!consumed_.count(key)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key;
        }
    }
    if (!unknown.empty())
        throw validation_error(origin_ + ": unknown configuration keys: " + unknown);
}

std::string Config::resolved_echo() const {
    // Group back into sections so the echo parses as a config file.
    std::string out;
    std::string current_section;
    bool first = true;
    for (const auto& [key, value] : resolved_) {
        const auto dot = key.rfind('.');
        const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
        const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
        if (section != current_section || first) {
            if (!first) out += "\n";
            if (!section.empty()) out += "[" + section + "]\n";
            current_section = section;
            first = false;
        }
        out += name + " = " + value + "\n";
    }
    return out;
}

ExperimentConfig experiment_from_config(Config& cfg, long long seed_override) {
    ExperimentConfig ec = ExperimentConfig::defaults();
    ec.n = cfg.get_int("problem.n", ec.n);
    ec.m = cfg.get_int("problem.m", ec.m);
    ec.kmax = cfg.get_double("problem.kmax", ec.kmax);
    ec.k_rule = k_rule_from_string(cfg.get_string("problem.k_rule", "open"));

    auto read_potential = [&cfg](const std::string& section, const PotentialSpec& def) {
        PotentialSpec spec;
        spec.kind = cfg.get_string(section + ".kind", def.kind);
        spec.amplitudes = cfg.get_double_list(section + ".amplitudes", def.amplitudes);
        spec.centers = cfg.get_double_list(section + ".centers", def.centers);
        spec.widths = cfg.get_double_list(section + ".widths", def.widths);
        spec.values = cfg.get_double_list(section + ".values", def.values);
        spec.margin = cfg.get_double(section + ".support_margin", def.margin);
        return spec;
    };
    ec.truth = read_potential("truth", ec.truth);
    ec.reference = read_potential("reference", ec.reference);

    ec.method = method_from_string(cfg.get_string("inversion.method", "DA"));
    ec.epsilon = cfg.get_double("inversion.epsilon", ec.epsilon);
    ec.rho = cfg.get_double("inversion.rho", ec.rho);
    ec.alpha = cfg.get_double("inversion.alpha", ec.alpha);
    ec.nq = cfg.get_int("inversion.nq", ec.nq);

    ec.sigma = cfg.get_double("noise.sigma", ec.sigma);
    ec.noise_on_derivatives = cfg.get_bool("noise.on_derivatives", ec.noise_on_derivatives);
    ec.seed = cfg.get_uint64("noise.seed", ec.seed);
    if (seed_override >= 0) {
        ec.seed = static_cast<std::uint64_t>(seed_override);
        cfg.override_resolved("noise.seed", std::to_string(ec.seed));
    }

    ec.trials = cfg.get_int("mc.trials", ec.trials);

    ec.validate();
    // Build eagerly so malformed potential specs fail at configuration time.
    ec.truth.build();
    ec.reference.build();
    return ec;
}

}  // namespace romscat
