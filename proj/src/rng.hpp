#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dmimo {

// Purpose tags keep independent random uses of one master seed from colliding
// (per-trial fading streams vs. one-off user placement draws).
enum class StreamPurpose : std::uint64_t {
    fading_trial = 1,
    user_placement = 2,
    probe_trial = 3,
};

std::uint64_t splitmix64(std::uint64_t& state);

// Counter-based substream: the engine state is a pure function of
// (master_seed, purpose, index), so concurrent trials draw identical numbers
// no matter how they are scheduled across workers.
std::mt19937_64 make_substream(std::uint64_t master_seed, StreamPurpose purpose,
                               std::uint64_t index);

// One CN(0, variance) draw: real and imaginary parts are independent
// N(0, variance/2), real part drawn first.
std::complex<double> draw_cn(std::mt19937_64& eng, double variance);

} // namespace dmimo
