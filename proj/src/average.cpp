#include "average.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "analytic.hpp"
#include "error.hpp"
#include "mathutil.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace dmimo {

namespace {

// Relative inset applied around the split radius so no quadrature node can
// round onto the rate profile's singular point; the excluded slivers carry
// O(1e-12) of the average.
constexpr double kSplitInset = 1e-13;

void check_average_params(const AverageParams& ap) {
    if (!(ap.cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell radius must be positive");
    if (!(ap.ring_radius_m > 0.0) || ap.ring_radius_m >= ap.cell_radius_m)
        throw Error(ErrorCode::domain,
                    "ring radius must lie strictly inside the cell: 0 < r < R");
    if (!(ap.exponent_v >= 2.0 && ap.exponent_v <= 6.0))
        throw Error(ErrorCode::invalid_argument, "path-loss exponent must lie in [2, 6]");
    if (!(ap.p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");
    if (ap.antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
}

double bound_argument_x(double ring_radius_m, double user_radius_m, double exponent_v) {
    const double r = ring_radius_m, ru = user_radius_m, v = exponent_v;
    const double delta = std::fabs(r - ru) * (r + ru);
    return std::pow(ru * ru + r * r, 0.5 * v - 1.0) / std::pow(delta, v - 1.0);
}

} // namespace

double radial_average(const std::function<double(double)>& f, double cell_radius_m,
                      double split_radius_m) {
    if (!(cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell radius must be positive");
    if (!(split_radius_m > 0.0) || split_radius_m >= cell_radius_m)
        throw Error(ErrorCode::domain, "split radius must lie strictly inside the cell");

    QuadOptions opt;
    opt.abs_tol = 0.5e-8;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 40000;

    const auto weighted = [&f](double ru) { return ru * f(ru); };
    const double lo = split_radius_m * (1.0 - kSplitInset);
    const double hi = split_radius_m * (1.0 + kSplitInset);
    const QuadResult inner = integrate(weighted, 0.0, lo, opt);
    const QuadResult outer = integrate(weighted, hi, cell_radius_m, opt);
    if (!inner.converged || !outer.converged)
        throw Error(ErrorCode::numeric, "radial average quadrature failed to converge");
    return 2.0 * (inner.value + outer.value) / (cell_radius_m * cell_radius_m);
}

double average_bound_b1(const AverageParams& ap) {
    check_average_params(ap);
    const double R = ap.cell_radius_m, r = ap.ring_radius_m, v = ap.exponent_v;
    const double pm = ap.p_eff * static_cast<double>(ap.antenna_count);
    const double q = (r * r) / (R * R);
    return std::log2(pm) + (0.5 * v - 1.0) * (1.0 + q) * std::log2(R * R + r * r) -
           (v - 1.0) * (1.0 - q) * std::log2(R * R - r * r) -
           (3.0 * v - 4.0) * q * std::log2(r) + 0.5 * v * std::numbers::log2e;
}

double average_bound_b2(const AverageParams& ap) {
    return average_bound_b1(ap) + std::log2(bound_gap_coefficient(ap.exponent_v));
}

bool average_bound_approx_ok(const AverageParams& ap, double threshold) {
    check_average_params(ap);
    const double pm = ap.p_eff * static_cast<double>(ap.antenna_count);
    const double x_centre = bound_argument_x(ap.ring_radius_m, 0.0, ap.exponent_v);
    const double x_edge = bound_argument_x(ap.ring_radius_m, ap.cell_radius_m, ap.exponent_v);
    return pm * std::min(x_centre, x_edge) >= threshold;
}

double average_rate_quadrature(const AverageParams& ap, bool use_exact_rate) {
    check_average_params(ap);
    const auto profile = [&ap, use_exact_rate](double ru) {
        if (use_exact_rate)
            return circle_rate(ap.ring_radius_m, ru, ap.exponent_v, ap.p_eff, ap.antenna_count)
                .rate_bits;
        return rate_bounds(ap.ring_radius_m, ru, ap.exponent_v, ap.p_eff, ap.antenna_count)
            .b1_bits;
    };
    return radial_average(profile, ap.cell_radius_m, ap.ring_radius_m);
}

ErgodicRate average_rate_montecarlo(const AverageParams& ap, std::size_t user_count,
                                    const McConfig& mc) {
    check_average_params(ap);
    if (user_count == 0)
        throw Error(ErrorCode::invalid_argument, "user_count must be positive");
    if (ap.antenna_count < user_count)
        throw Error(ErrorCode::invalid_argument,
                    "zero-forcing needs at least as many antennas as users");

    const CellGeometry geom{ap.cell_radius_m, ap.ring_radius_m, ap.antenna_count};
    const RingLayout ring = build_ring(geom);

    std::vector<double> trial_means(mc.trials, 0.0);
    std::atomic<std::size_t> resampled{0};
    run_trials(mc.trials, mc.threads, [&](std::size_t t) {
        // Fresh user placements each trial: the estimate averages over both
        // fading and position.
        std::mt19937_64 place_rng =
            make_substream(mc.master_seed, StreamPurpose::user_placement, t);
        std::vector<Vec2> users(user_count);
        for (std::size_t k = 0; k < user_count; ++k) {
            int attempts = 0;
            for (;;) {
                const UserLocation loc = sample_user(ap.cell_radius_m, 0.0, place_rng);
                if (min_antenna_distance(ring, loc.position) >= mc.min_distance_m) {
                    users[k] = loc.position;
                    break;
                }
                if (++attempts >= 10)
                    throw Error(ErrorCode::numeric,
                                "could not place a user clear of the antenna ring");
            }
        }
        const PathLossMatrix beta = path_loss_matrix(ring, users, ap.exponent_v,
                                                     mc.min_distance_m);

        std::mt19937_64 fade_rng = make_substream(mc.master_seed, StreamPurpose::fading_trial, t);
        int consecutive = 0;
        for (;;) {
            try {
                const ChannelMatrix g = draw_channel(beta, mc.fading, fade_rng);
                const std::vector<double> rates = zf_instantaneous_rates(g, ap.p_eff);
                double sum = 0.0;
                for (double rk : rates) sum += rk;
                trial_means[t] = sum / static_cast<double>(user_count);
                return;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::singular) throw;
                if (mc.fading == FadingKind::constant_one) throw;
                resampled.fetch_add(1);
                if (++consecutive >= 10)
                    throw Error(ErrorCode::numeric,
                                "channel stayed singular through 10 fading redraws");
            }
        }
    });

    ErgodicRate out = summarize_trials(trial_means);
    out.resampled = resampled.load();
    return out;
}

} // namespace dmimo
