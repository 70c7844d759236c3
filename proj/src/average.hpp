#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "montecarlo.hpp"

namespace dmimo {

struct AverageParams {
    double cell_radius_m = 1000.0;  // R
    double ring_radius_m = 500.0;   // r, must satisfy 0 < r < R
    double exponent_v = 3.6;
    double p_eff = 0.0;             // normalized transmit power
    std::size_t antenna_count = 300;
};

// Area average over the cell disc of a radial profile f(ru):
//   (2 / R^2) * Int_0^R ru * f(ru) dru,
// split at ru = ring_radius_m where the rate profile has an integrable
// singularity.
double radial_average(const std::function<double(double)>& f, double cell_radius_m,
                      double split_radius_m);

// Closed-form area averages of the two elementary bounds. b2 differs from b1
// by exactly log2 of the bound-gap coefficient.
double average_bound_b1(const AverageParams& ap);
double average_bound_b2(const AverageParams& ap);

// The closed forms drop the "+1" inside the logarithm; they are trustworthy
// when the interference term dominates. True when
// p_eff * M * min(x(0), x(R^-)) >= threshold (default 10).
bool average_bound_approx_ok(const AverageParams& ap, double threshold = 10.0);

// Numerical area average of a per-user profile. With `use_exact_rate` the
// asymptotic rate log2(1 + P M I0) is averaged; otherwise the b1 bound
// profile is averaged (for cross-checking the closed form).
double average_rate_quadrature(const AverageParams& ap, bool use_exact_rate);

// Composite Monte Carlo: every trial redraws all K user positions and the
// fading, then averages the zero-forcing rates of all users. `user_count`
// users share the cell; positions come from the placement substream.
ErgodicRate average_rate_montecarlo(const AverageParams& ap, std::size_t user_count,
                                    const McConfig& mc);

} // namespace dmimo
