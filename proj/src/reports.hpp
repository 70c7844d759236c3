#pragma once

#include <optional>
#include <vector>

#include "analytic.hpp"
#include "average.hpp"
#include "config.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"

namespace dmimo {

// The fixed user set for a per-user study: the target user at
// (target_radius_m, 0) plus user_count - 1 interferers drawn once from the
// scenario's placement stream, each kept clear of the antenna ring.
std::vector<Vec2> scenario_user_set(const ScenarioConfig& cfg, double target_radius_m);

struct UserRateReport {
    double user_radius_m = 0.0;
    double p_eff = 0.0;
    AsymptoticRate asymptotic;
    RateBounds bounds;
    std::optional<ErgodicRate> mc;  // present when cfg.trials > 0
};

// Asymptotic rate, elementary bounds, and (when trials > 0) the simulated
// ergodic zero-forcing rate for a user at the given radius.
UserRateReport rate_user_report(const ScenarioConfig& cfg, double user_radius_m);

struct AverageRateReport {
    double p_eff = 0.0;
    double b1_average_bits = 0.0;   // closed-form area average of b1
    double b2_average_bits = 0.0;   // closed-form area average of b2
    bool approx_ok = false;         // closed forms trustworthy at this power
    double quadrature_bits = 0.0;   // numerical area average of the exact rate
    BoundOrdering ordering = BoundOrdering::equal;
    std::optional<ErgodicRate> mc;  // present when cfg.trials > 0
};

// Cell-average rate: closed-form bound averages, the quadrature average of
// the asymptotic rate, and (when trials > 0) the composite simulation.
AverageRateReport rate_average_report(const ScenarioConfig& cfg);

// McConfig drawn from a scenario's simulation controls.
McConfig scenario_mc_config(const ScenarioConfig& cfg);

} // namespace dmimo
