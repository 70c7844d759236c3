#pragma once

#include <functional>

namespace dmimo {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 10000;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;  // accumulated local error estimates
    int evaluations = 0;
    bool converged = false;
};

// Globally adaptive Gauss-Kronrod (G7, K15) on [a, b], always refining the
// interval with the largest error estimate. All nodes are interior, so
// integrands with integrable endpoint singularities are safe to pass.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

} // namespace dmimo
