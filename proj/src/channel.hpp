#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "geometry.hpp"

namespace dmimo {

// Large-scale attenuation d^{-v} for a path-loss exponent v in [2, 6].
double path_loss(double distance_m, double exponent_v);

using PathLossMatrix = Eigen::MatrixXd;          // M x K, beta_mk
using ChannelMatrix = Eigen::MatrixXcd;          // M x K, g_mk

// beta_mk = d_mk^{-v}. Throws ErrorCode::singular when a user sits closer than
// `min_distance_m` to any antenna; the message names the offending pair.
PathLossMatrix path_loss_matrix(const RingLayout& ring, const std::vector<Vec2>& users,
                                double exponent_v, double min_distance_m);

enum class FadingKind {
    rayleigh,      // h_mk ~ CN(0, 1)
    constant_one,  // h_mk = 1, for deterministic tests
};

// Fills `h` (same shape as beta) column by column, user index outer and
// antenna index inner, so a fixed engine state yields a fixed matrix.
void fill_fading(Eigen::MatrixXcd& h, FadingKind kind, std::mt19937_64& rng);

// g_mk = h_mk * sqrt(beta_mk).
ChannelMatrix draw_channel(const PathLossMatrix& beta, FadingKind kind, std::mt19937_64& rng);

} // namespace dmimo
