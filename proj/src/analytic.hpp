#pragma once

#include <cstddef>

namespace dmimo {

// Legendre function of the first kind P_nu(z) for real z >= 1 and real degree
// nu, evaluated through its integral representation
//   P_nu(z) = (1/pi) * Int_0^pi (z + sqrt(z^2 - 1) cos(phi))^nu dphi.
// Throws ErrorCode::domain for z < 1 and ErrorCode::numeric when the adaptive
// quadrature cannot certify the result.
double legendre_halfint(double nu, double z);

// Large-M interference kernel for a user at radius ru inside (or outside) a
// ring of radius r:
//   I0 = |r^2 - ru^2|^{-v/2} * P_{v/2-1}((r^2 + ru^2) / |r^2 - ru^2|).
// `ru == r` is a genuine singularity -> ErrorCode::singular. Always evaluated
// through the Legendre quadrature; see closed_form_i0 for the elementary
// special cases.
double circle_i0(double ring_radius_m, double user_radius_m, double exponent_v);

// Elementary equivalents of circle_i0 at v = 2, 4, 6 only; other exponents
// throw ErrorCode::invalid_argument. Kept separate so the two routes can be
// compared against each other.
double closed_form_i0(double ring_radius_m, double user_radius_m, double exponent_v);

// Finite-ring average (1/M) * sum_m d_m^{-v} for M antennas equally spaced on
// the ring and the user at angle 0; converges to circle_i0 as M grows.
double riemann_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                  std::size_t antenna_count);

// Worst-case |riemann_i0 - circle_i0| envelope from the extreme distances:
// (2/M) * [ |r - ru|^{-v} - (r + ru)^{-v} ].
double riemann_error_bound(double ring_radius_m, double user_radius_m, double exponent_v,
                           std::size_t antenna_count);

// Constant relating the two elementary rate bounds:
//   C(v) = 2^{3(v/2-1)} * Gamma(v/2 - 1/2)^2 / (pi * Gamma(v - 1)).
// C(2) = C(4) = 1; |log2 C(v)| < 0.6 on [2, 6].
double bound_gap_coefficient(double exponent_v);

enum class BoundOrdering {
    b1_upper,  // 2 < v < 4: b1 >= rate >= b2
    b1_lower,  // 4 < v < 6: b2 >= rate >= b1
    equal,     // v in {2, 4}: b1 == b2 == rate
};

// Which of the two bounds sits above the rate at this exponent.
BoundOrdering bound_ordering(double exponent_v);

struct RateBounds {
    double b1_bits = 0.0;
    double b2_bits = 0.0;
    BoundOrdering ordering = BoundOrdering::equal;
};

// Elementary bounds on the asymptotic rate:
//   x  = (ru^2 + r^2)^{v/2-1} / (|r - ru| (r + ru))^{v-1}
//   b1 = log2(1 + P M x),  b2 = log2(1 + P M x C(v)).
RateBounds rate_bounds(double ring_radius_m, double user_radius_m, double exponent_v,
                       double p_eff, std::size_t antenna_count);

struct AsymptoticRate {
    double rate_bits = 0.0;
    double i0 = 0.0;
    double z = 0.0;  // Legendre argument, for diagnostics
};

// Large-M limit of the zero-forcing per-user rate: log2(1 + P M I0).
AsymptoticRate circle_rate(double ring_radius_m, double user_radius_m, double exponent_v,
                           double p_eff, std::size_t antenna_count);

// Same quantity for an arbitrary user position against an explicit antenna
// ring of M elements: log2(1 + P * sum_m d_m^{-v}).
double general_asymptotic_rate(double ring_radius_m, double user_radius_m, double exponent_v,
                               double p_eff, std::size_t antenna_count);

// Shared radius validation: positive radii and ru != r (ErrorCode::singular).
void check_radii(double ring_radius_m, double user_radius_m);

} // namespace dmimo
