#include "reports.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "error.hpp"
#include "rng.hpp"

namespace dmimo {

McConfig scenario_mc_config(const ScenarioConfig& cfg) {
    McConfig mc;
    mc.trials = cfg.trials;
    mc.master_seed = cfg.master_seed;
    mc.min_distance_m = cfg.min_distance_m;
    mc.threads = cfg.threads;
    mc.fading = FadingKind::rayleigh;
    return mc;
}

std::vector<Vec2> scenario_user_set(const ScenarioConfig& cfg, double target_radius_m) {
    validate_config(cfg);
    if (!(target_radius_m >= 0.0) || target_radius_m >= cfg.cell_radius_m)
        throw Error(ErrorCode::invalid_argument,
                    "target user radius must lie in [0, cell_radius_m)");

    const CellGeometry geom{cfg.cell_radius_m, cfg.ring_radius_m, cfg.antenna_count};
    const RingLayout ring = build_ring(geom);

    std::vector<Vec2> users;
    users.reserve(cfg.user_count);
    users.push_back({target_radius_m, 0.0});

    // Interferer layout is a scenario-level fixture: one draw per scenario,
    // indexed away from the per-trial placement streams.
    std::mt19937_64 rng = make_substream(cfg.master_seed, StreamPurpose::user_placement,
                                         std::numeric_limits<std::uint64_t>::max());
    for (std::size_t k = 1; k < cfg.user_count; ++k) {
        int attempts = 0;
        for (;;) {
            const UserLocation loc = sample_user(cfg.cell_radius_m, 0.0, rng);
            if (min_antenna_distance(ring, loc.position) >= cfg.min_distance_m) {
                users.push_back(loc.position);
                break;
            }
            if (++attempts >= 10)
                throw Error(ErrorCode::numeric,
                            "could not place an interferer clear of the antenna ring");
        }
    }
    return users;
}

UserRateReport rate_user_report(const ScenarioConfig& cfg, double user_radius_m) {
    validate_config(cfg);
    if (!(user_radius_m >= 0.0) || user_radius_m >= cfg.cell_radius_m)
        throw Error(ErrorCode::invalid_argument,
                    "user radius must lie in [0, cell_radius_m)");

    UserRateReport out;
    out.user_radius_m = user_radius_m;
    out.p_eff = scenario_p_eff(cfg);
    out.asymptotic = circle_rate(cfg.ring_radius_m, user_radius_m, cfg.exponent_v, out.p_eff,
                                 cfg.antenna_count);
    out.bounds = rate_bounds(cfg.ring_radius_m, user_radius_m, cfg.exponent_v, out.p_eff,
                             cfg.antenna_count);

    if (cfg.trials > 0) {
        const std::vector<Vec2> users = scenario_user_set(cfg, user_radius_m);
        const CellGeometry geom{cfg.cell_radius_m, cfg.ring_radius_m, cfg.antenna_count};
        const RingLayout ring = build_ring(geom);
        out.mc = ergodic_rate(ring, users, cfg.exponent_v, out.p_eff, scenario_mc_config(cfg));
    }
    return out;
}

AverageRateReport rate_average_report(const ScenarioConfig& cfg) {
    validate_config(cfg);

    AverageRateReport out;
    out.p_eff = scenario_p_eff(cfg);

    AverageParams ap;
    ap.cell_radius_m = cfg.cell_radius_m;
    ap.ring_radius_m = cfg.ring_radius_m;
    ap.exponent_v = cfg.exponent_v;
    ap.p_eff = out.p_eff;
    ap.antenna_count = cfg.antenna_count;

    out.b1_average_bits = average_bound_b1(ap);
    out.b2_average_bits = average_bound_b2(ap);
    out.approx_ok = average_bound_approx_ok(ap);
    out.quadrature_bits = average_rate_quadrature(ap, true);
    out.ordering = bound_ordering(cfg.exponent_v);

    if (cfg.trials > 0)
        out.mc = average_rate_montecarlo(ap, cfg.user_count, scenario_mc_config(cfg));
    return out;
}

} // namespace dmimo
