#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "channel.hpp"
#include "geometry.hpp"

namespace dmimo {

struct McConfig {
    std::size_t trials = 2000;
    std::uint64_t master_seed = 2016;
    double min_distance_m = 1.0;
    unsigned threads = 1;
    FadingKind fading = FadingKind::rayleigh;
};

// Transmit power after normalization. `norm_radius_m` is the distance whose
// path loss the nominal power is measured against (the cell midpoint R/2 by
// default), so p_eff = power_linear / path_loss(norm_radius_m, v)
//                    = power_linear * norm_radius_m^v.
double effective_power(double power_linear, double norm_radius_m, double exponent_v);

// Instantaneous zero-forcing per-user rates log2(1 + p_eff / [(G^H G)^{-1}]_kk)
// for one channel realization. Throws ErrorCode::singular when the Gram matrix
// is not safely invertible.
std::vector<double> zf_instantaneous_rates(const ChannelMatrix& g, double p_eff);

struct ErgodicRate {
    double mean_bits = 0.0;        // target user's average rate
    double half_width_95 = 0.0;    // normal-approximation confidence half-width
    std::size_t trials_used = 0;
    std::size_t resampled = 0;     // trials that needed a fresh fading draw
};

// Runs fn(trial_index) once for every index in [0, trials) across `threads`
// workers (index order is not guaranteed); rethrows the first failure. Callers
// must write per-index results so the outcome is scheduling-independent.
void run_trials(std::size_t trials, unsigned threads,
                const std::function<void(std::size_t)>& fn);

// Mean and 95% half-width of per-trial values, reduced in index order.
ErgodicRate summarize_trials(const std::vector<double>& values);

// Ergodic zero-forcing rate of users[0] with all positions held fixed; fading
// is redrawn each trial from a per-trial substream so results are independent
// of thread count.
ErgodicRate ergodic_rate(const RingLayout& ring, const std::vector<Vec2>& users,
                         double exponent_v, double p_eff, const McConfig& mc);

struct ProbeEntries {
    double gaussian_norm_msq = 0.0;      // E(||p||^2/M - 1)^2, p ~ CN(0,1)^M
    double gaussian_cross_msq = 0.0;     // E|p^H q / M|^2, independent p, q
    double unit_modulus_norm_msq = 0.0;  // same norm statistic with |p_i| = 1
    double zero_cross_msq = 0.0;         // cross statistic against q = 0
    double envelope_norm = 0.0;          // per-entry variance bound / M
    double envelope_cross = 0.0;         // 1 / M
};

// Mean-square concentration of random-vector statistics at dimension M,
// averaged over `trials` probes: evidence that channel columns orthogonalize
// as M grows. The measured mean squares track the analytic 1/M envelopes.
ProbeEntries lln_probe(std::size_t dimension_m, std::size_t trials, std::uint64_t master_seed);

} // namespace dmimo
