#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "montecarlo.hpp"

namespace dmimo {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
        throw Error(ErrorCode::invalid_argument, key + ": expected a finite number, got '" +
                                                     value + "'");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    if (!value.empty() && (value[0] == '-' || value[0] == '+'))
        throw Error(ErrorCode::invalid_argument, key + ": expected an unsigned integer, got '" +
                                                     value + "'");
    const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw Error(ErrorCode::invalid_argument, key + ": expected an unsigned integer, got '" +
                                                     value + "'");
    return x;
}

std::size_t parse_count(const std::string& key, const std::string& value, std::size_t min_value) {
    const std::uint64_t x = parse_u64(key, value);
    if (x < min_value)
        throw Error(ErrorCode::invalid_argument,
                    key + ": must be at least " + std::to_string(min_value));
    return static_cast<std::size_t>(x);
}

double parse_positive(const std::string& key, const std::string& value) {
    const double x = parse_double(key, value);
    if (!(x > 0.0))
        throw Error(ErrorCode::invalid_argument, key + ": must be positive");
    return x;
}

} // namespace

double scenario_p_eff(const ScenarioConfig& cfg) {
    const double power_linear = std::pow(10.0, cfg.power_db / 10.0);
    if (cfg.power_normalization == PowerNorm::none) return power_linear;
    return effective_power(power_linear, 0.5 * cfg.cell_radius_m, cfg.exponent_v);
}

void config_set(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "cell_radius_m") {
        cfg.cell_radius_m = parse_positive(key, value);
    } else if (key == "ring_radius_m") {
        cfg.ring_radius_m = parse_positive(key, value);
    } else if (key == "antenna_count") {
        cfg.antenna_count = parse_count(key, value, 1);
    } else if (key == "user_count") {
        cfg.user_count = parse_count(key, value, 1);
    } else if (key == "exponent_v") {
        const double v = parse_double(key, value);
        if (!(v >= 2.0 && v <= 6.0))
            throw Error(ErrorCode::invalid_argument, "exponent_v: must lie in [2, 6]");
        cfg.exponent_v = v;
    } else if (key == "power_db") {
        cfg.power_db = parse_double(key, value);
    } else if (key == "power_normalization") {
        if (value == "midpoint")
            cfg.power_normalization = PowerNorm::midpoint;
        else if (value == "none")
            cfg.power_normalization = PowerNorm::none;
        else
            throw Error(ErrorCode::invalid_argument,
                        "power_normalization: expected 'midpoint' or 'none', got '" + value + "'");
    } else if (key == "trials") {
        cfg.trials = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "master_seed") {
        cfg.master_seed = parse_u64(key, value);
    } else if (key == "min_distance_m") {
        const double d = parse_double(key, value);
        if (d < 0.0)
            throw Error(ErrorCode::invalid_argument, "min_distance_m: must be non-negative");
        cfg.min_distance_m = d;
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "output_path") {
        cfg.output_path = value;
    } else {
        throw Error(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    }
}

std::string config_get(const ScenarioConfig& cfg, const std::string& key) {
    if (key == "cell_radius_m") return format_double(cfg.cell_radius_m);
    if (key == "ring_radius_m") return format_double(cfg.ring_radius_m);
    if (key == "antenna_count") return std::to_string(cfg.antenna_count);
    if (key == "user_count") return std::to_string(cfg.user_count);
    if (key == "exponent_v") return format_double(cfg.exponent_v);
    if (key == "power_db") return format_double(cfg.power_db);
    if (key == "power_normalization")
        return cfg.power_normalization == PowerNorm::midpoint ? "midpoint" : "none";
    if (key == "trials") return std::to_string(cfg.trials);
    if (key == "master_seed") return std::to_string(cfg.master_seed);
    if (key == "min_distance_m") return format_double(cfg.min_distance_m);
    if (key == "threads") return std::to_string(cfg.threads);
    if (key == "output_path") return cfg.output_path;
    throw Error(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
}

void validate_config(const ScenarioConfig& cfg) {
    if (!(cfg.cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell_radius_m must be positive");
    if (!(cfg.ring_radius_m > 0.0) || cfg.ring_radius_m >= cfg.cell_radius_m)
        throw Error(ErrorCode::invalid_argument,
                    "ring_radius_m must lie strictly inside the cell");
    if (cfg.antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
    if (cfg.user_count == 0)
        throw Error(ErrorCode::invalid_argument, "user_count must be positive");
    if (cfg.antenna_count < cfg.user_count)
        throw Error(ErrorCode::invalid_argument,
                    "zero-forcing needs antenna_count >= user_count");
    if (!(cfg.exponent_v >= 2.0 && cfg.exponent_v <= 6.0))
        throw Error(ErrorCode::invalid_argument, "exponent_v must lie in [2, 6]");
    if (cfg.min_distance_m < 0.0)
        throw Error(ErrorCode::invalid_argument, "min_distance_m must be non-negative");
    if (cfg.min_distance_m >= cfg.cell_radius_m)
        throw Error(ErrorCode::invalid_argument, "min_distance_m must be below the cell radius");
}

std::string serialize_config(const ScenarioConfig& cfg) {
    static const char* kKeys[] = {
        "cell_radius_m", "ring_radius_m",       "antenna_count", "user_count",
        "exponent_v",    "power_db",            "power_normalization",
        "trials",        "master_seed",         "min_distance_m",
        "threads",       "output_path",
    };
    std::ostringstream out;
    out << "# circular-array massive MIMO scenario\n";
    for (const char* key : kKeys) out << key << " = " << config_get(cfg, key) << "\n";
    return out.str();
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::invalid_argument,
                        "config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCode::invalid_argument,
                        "config line " + std::to_string(line_no) + ": empty key");
        try {
            config_set(cfg, key, value);
        } catch (const Error& e) {
            throw Error(e.code(), "config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void save_config(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << serialize_config(cfg);
    if (!out)
        throw Error(ErrorCode::io, "failed writing config to '" + path + "'");
}

} // namespace dmimo
