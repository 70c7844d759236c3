#include "optimizer.hpp"

#include <cmath>

#include "error.hpp"

namespace dmimo {

RadiusSolution solve_radius(double exponent_v, double cell_radius_m) {
    if (!(exponent_v >= 2.0 && exponent_v <= 6.0))
        throw Error(ErrorCode::domain, "path-loss exponent must lie in [2, 6]");
    if (!(cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell radius must be positive");

    RadiusSolution out;
    if (exponent_v == 2.0) {
        // c -> infinity: t^{2+c}(t + 2) -> 0 for t < 1, and the root tends to 1.
        out.t0 = 1.0;
        out.ratio = 1.0 / std::sqrt(2.0);
        out.r_opt_m = out.ratio * cell_radius_m;
        out.residual = 0.0;
        out.at_exponent_limit = true;
        return out;
    }

    const double c = 2.0 / (exponent_v - 2.0);
    const auto g = [c](double t) {
        return std::pow(t, 3.0 + c) + 2.0 * std::pow(t, 2.0 + c) - 1.0;
    };
    const auto g_prime = [c](double t) {
        return std::pow(t, 1.0 + c) * ((2.0 + c) * (t + 2.0) + t);
    };

    // g is strictly increasing on (0, 1) with g(0) = -1 and g(1) = 2: bisect to
    // a short bracket, then polish with Newton.
    double lo = 1e-9, hi = 1.0 - 1e-9;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double step = g(t) / g_prime(t);
        const double t_next = t - step;
        if (!(t_next > 0.0 && t_next < 1.0)) break;
        t = t_next;
        if (std::fabs(step) < 1e-16) break;
    }

    out.t0 = t;
    out.residual = std::fabs(g(t));
    if (out.residual > 1e-12)
        throw Error(ErrorCode::numeric, "radius equation root did not converge");
    out.ratio = 1.0 / std::sqrt(t + 1.0);
    out.r_opt_m = out.ratio * cell_radius_m;
    return out;
}

ScanResult optimality_scan(const AverageParams& ap, double lo_m, double hi_m,
                           std::size_t steps) {
    if (!(lo_m > 0.0 && lo_m < hi_m && hi_m < ap.cell_radius_m))
        throw Error(ErrorCode::invalid_argument,
                    "scan range must satisfy 0 < lo < hi < cell radius");
    if (steps < 2)
        throw Error(ErrorCode::invalid_argument, "scan needs at least 2 steps");

    ScanResult out;
    out.radii_m.reserve(steps);
    out.average_bits.reserve(steps);
    const double span = (hi_m - lo_m) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        AverageParams p = ap;
        p.ring_radius_m = lo_m + span * static_cast<double>(i);
        const double bits = average_rate_quadrature(p, true);
        out.radii_m.push_back(p.ring_radius_m);
        out.average_bits.push_back(bits);
        if (out.best_radius_m == 0.0 || bits > out.best_bits) {
            out.best_radius_m = p.ring_radius_m;
            out.best_bits = bits;
        }
    }
    return out;
}

} // namespace dmimo
