#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace dmimo {

enum class PowerNorm {
    midpoint,  // nominal power is the receive SNR at distance R/2
    none,      // nominal power used as-is
};

// One scenario: geometry, propagation, power, and simulation controls. All
// fields are reachable by the string keys used in config files and the C API.
struct ScenarioConfig {
    double cell_radius_m = 1000.0;
    double ring_radius_m = 500.0;
    std::size_t antenna_count = 300;
    std::size_t user_count = 9;
    double exponent_v = 3.6;
    double power_db = 10.0;
    PowerNorm power_normalization = PowerNorm::midpoint;
    std::size_t trials = 2000;
    std::uint64_t master_seed = 2016;
    double min_distance_m = 1.0;
    unsigned threads = 1;
    std::string output_path;
};

// Normalized transmit power implied by the scenario's power settings.
double scenario_p_eff(const ScenarioConfig& cfg);

// Per-field set/get by key. `config_set` validates the value it touches and
// throws ErrorCode::invalid_argument for unknown keys or unparseable values;
// cross-field constraints are deferred to validate_config.
void config_set(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string config_get(const ScenarioConfig& cfg, const std::string& key);

// Cross-field checks: ring inside cell, antennas >= users, exponent range.
void validate_config(const ScenarioConfig& cfg);

// Flat "key = value" text with '#' comments; round-trips exactly through
// parse_config.
std::string serialize_config(const ScenarioConfig& cfg);
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& cfg, const std::string& path);

} // namespace dmimo
