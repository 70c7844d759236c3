#pragma once

#include <cstddef>
#include <vector>

#include "average.hpp"

namespace dmimo {

struct RadiusSolution {
    double t0 = 0.0;        // root of t^{3+c} + 2 t^{2+c} - 1 = 0, c = 2/(v-2)
    double ratio = 0.0;     // optimal r / R = 1 / sqrt(t0 + 1)
    double r_opt_m = 0.0;   // ratio * R
    double residual = 0.0;  // |t0^{3+c} + 2 t0^{2+c} - 1|
    bool at_exponent_limit = false;  // v == 2: limiting ratio 1/sqrt(2)
};

// Ring radius maximizing the closed-form cell-average bound, independent of
// power and antenna count. Valid for exponents in [2, 6]; v == 2 returns the
// limiting solution with a flag.
RadiusSolution solve_radius(double exponent_v, double cell_radius_m);

struct ScanResult {
    std::vector<double> radii_m;
    std::vector<double> average_bits;
    double best_radius_m = 0.0;
    double best_bits = 0.0;
};

// Direct scan of the exact quadrature cell average over a ring-radius grid;
// used to confirm the closed-form optimum lands at the scanned maximum.
ScanResult optimality_scan(const AverageParams& ap, double lo_m, double hi_m,
                           std::size_t steps);

} // namespace dmimo
