#include "analytic.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "mathutil.hpp"
#include "quadrature.hpp"

namespace dmimo {

namespace {

void check_exponent(double exponent_v) {
    if (!(exponent_v >= 2.0 && exponent_v <= 6.0))
        throw Error(ErrorCode::invalid_argument, "path-loss exponent must lie in [2, 6]");
}

// |r^2 - ru^2| computed as |r - ru| (r + ru) to avoid cancellation when the
// user approaches the ring.
double radius_gap(double r, double ru) { return std::fabs(r - ru) * (r + ru); }

} // namespace

void check_radii(double ring_radius_m, double user_radius_m) {
    if (!(ring_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "ring radius must be positive");
    if (!(user_radius_m >= 0.0))
        throw Error(ErrorCode::invalid_argument, "user radius must be non-negative");
    if (user_radius_m == ring_radius_m)
        throw Error(ErrorCode::singular, "user radius equals ring radius");
}

double legendre_halfint(double nu, double z) {
    if (!(z >= 1.0))
        throw Error(ErrorCode::domain, "Legendre argument must satisfy z >= 1");
    if (z == 1.0) return 1.0;
    const double s = std::sqrt((z - 1.0) * (z + 1.0));
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    const QuadResult q = integrate(
        [nu, z, s](double phi) { return std::pow(z + s * std::cos(phi), nu); }, 0.0,
        std::numbers::pi, opt);
    if (q.abs_err > 1e-10 * std::max(1.0, std::fabs(q.value)))
        throw Error(ErrorCode::numeric, "Legendre quadrature failed to converge");
    return q.value / std::numbers::pi;
}

double circle_i0(double ring_radius_m, double user_radius_m, double exponent_v) {
    check_radii(ring_radius_m, user_radius_m);
    check_exponent(exponent_v);
    const double r = ring_radius_m, ru = user_radius_m, v = exponent_v;
    const double delta = radius_gap(r, ru);
    const double z = (r * r + ru * ru) / delta;
    return std::pow(delta, -0.5 * v) * legendre_halfint(0.5 * v - 1.0, z);
}

double closed_form_i0(double ring_radius_m, double user_radius_m, double exponent_v) {
    check_radii(ring_radius_m, user_radius_m);
    const double r = ring_radius_m, ru = user_radius_m;
    const double delta = radius_gap(r, ru);
    const double sum_sq = r * r + ru * ru;
    if (exponent_v == 2.0) return 1.0 / delta;
    if (exponent_v == 4.0) return sum_sq / (delta * delta * delta);
    if (exponent_v == 6.0) {
        const double z = sum_sq / delta;
        return (3.0 * z * z - 1.0) / (2.0 * delta * delta * delta);
    }
    throw Error(ErrorCode::invalid_argument, "closed form exists only for v in {2, 4, 6}");
}

double riemann_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                  std::size_t antenna_count) {
    check_radii(ring_radius_m, user_radius_m);
    check_exponent(exponent_v);
    if (antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
    const double r = ring_radius_m, ru = user_radius_m, v = exponent_v;
    const double m_f = static_cast<double>(antenna_count);
    double sum = 0.0;
    for (std::size_t m = 0; m < antenna_count; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / m_f;
        const double d_sq = r * r + ru * ru - 2.0 * r * ru * std::cos(theta);
        sum += std::pow(d_sq, -0.5 * v);
    }
    return sum / m_f;
}

double riemann_error_bound(double ring_radius_m, double user_radius_m, double exponent_v,
                           std::size_t antenna_count) {
    check_radii(ring_radius_m, user_radius_m);
    check_exponent(exponent_v);
    if (antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
    const double r = ring_radius_m, ru = user_radius_m, v = exponent_v;
    const double near = std::pow(std::fabs(r - ru), -v);
    const double far = std::pow(r + ru, -v);
    return 2.0 * (near - far) / static_cast<double>(antenna_count);
}

double bound_gap_coefficient(double exponent_v) {
    check_exponent(exponent_v);
    const double v = exponent_v;
    const double g_half = std::tgamma(0.5 * v - 0.5);
    const double g_full = std::tgamma(v - 1.0);
    return std::exp2(3.0 * (0.5 * v - 1.0)) * g_half * g_half / (std::numbers::pi * g_full);
}

BoundOrdering bound_ordering(double exponent_v) {
    check_exponent(exponent_v);
    if (exponent_v > 2.0 && exponent_v < 4.0) return BoundOrdering::b1_upper;
    if (exponent_v > 4.0) return BoundOrdering::b1_lower;
    return BoundOrdering::equal;
}

RateBounds rate_bounds(double ring_radius_m, double user_radius_m, double exponent_v,
                       double p_eff, std::size_t antenna_count) {
    check_radii(ring_radius_m, user_radius_m);
    check_exponent(exponent_v);
    if (!(p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");
    if (antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
    const double r = ring_radius_m, ru = user_radius_m, v = exponent_v;
    const double delta = radius_gap(r, ru);
    const double x = std::pow(ru * ru + r * r, 0.5 * v - 1.0) / std::pow(delta, v - 1.0);
    const double pm = p_eff * static_cast<double>(antenna_count);
    RateBounds out;
    out.b1_bits = log2_1p(pm * x);
    out.b2_bits = log2_1p(pm * x * bound_gap_coefficient(v));
    out.ordering = bound_ordering(v);
    return out;
}

AsymptoticRate circle_rate(double ring_radius_m, double user_radius_m, double exponent_v,
                           double p_eff, std::size_t antenna_count) {
    if (!(p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");
    if (antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
    AsymptoticRate out;
    out.i0 = circle_i0(ring_radius_m, user_radius_m, exponent_v);
    const double r = ring_radius_m, ru = user_radius_m;
    out.z = (r * r + ru * ru) / (std::fabs(r - ru) * (r + ru));
    out.rate_bits = log2_1p(p_eff * static_cast<double>(antenna_count) * out.i0);
    return out;
}

double general_asymptotic_rate(double ring_radius_m, double user_radius_m, double exponent_v,
                               double p_eff, std::size_t antenna_count) {
    if (!(p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");
    const double mean = riemann_i0(ring_radius_m, user_radius_m, exponent_v, antenna_count);
    return log2_1p(p_eff * static_cast<double>(antenna_count) * mean);
}

} // namespace dmimo
