#pragma once

#include <cmath>
#include <numbers>

namespace dmimo {

// log2(1 + x) without cancellation for small x.
inline double log2_1p(double x) { return std::log1p(x) * std::numbers::log2e; }

// Two-sided 95% normal quantile used for Monte Carlo half-widths.
inline constexpr double kz95 = 1.959963984540054;

} // namespace dmimo
