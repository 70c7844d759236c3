#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace dmimo {

enum class SweepAxis { user_radius, ring_radius, antennas, power_db };
enum class SweepTarget { per_user, cell_average };

SweepAxis parse_sweep_axis(const std::string& name);
SweepTarget parse_sweep_target(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);
std::string sweep_target_name(SweepTarget target);

struct SweepRow {
    double axis_value = 0.0;
    std::optional<double> asymptotic_bits;       // per-user limit / quadrature average
    std::optional<double> b1_bits;               // bound (or its closed-form average)
    std::optional<double> b2_bits;
    std::optional<double> mc_bits;               // simulation, when trials > 0
    std::optional<double> mc_half_width_95;
    std::string note;                            // "", "singular", or "mc_skipped"
};

// Evaluates the chosen target along one swept parameter, other settings taken
// from `cfg`. `user_radius_m` fixes the studied user for per-user targets on
// the non-user-radius axes. Grid points where the user sits exactly on the
// ring yield a "singular" row instead of aborting the sweep; points where
// only the simulation is infeasible (user within min_distance_m of an
// antenna) keep their analytic columns and note "mc_skipped".
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepAxis axis, double start,
                                double stop, std::size_t steps, SweepTarget target,
                                double user_radius_m);

// CSV with header
//   <axis>,asymptotic_bits,b1_bits,b2_bits,mc_bits,mc_half_width_95,note
// and one row per grid point; missing values are empty cells.
std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis);

} // namespace dmimo
