#include "rng.hpp"

#include <cmath>

namespace dmimo {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_substream(std::uint64_t master_seed, StreamPurpose purpose,
                               std::uint64_t index) {
    std::uint64_t state = master_seed;
    const std::uint64_t a = splitmix64(state);
    state ^= static_cast<std::uint64_t>(purpose) * 0xda942042e4dd58b5ULL;
    const std::uint64_t b = splitmix64(state);
    state ^= index;
    const std::uint64_t c = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    return std::mt19937_64(seq);
}

std::complex<double> draw_cn(std::mt19937_64& eng, double variance) {
    std::normal_distribution<double> part(0.0, std::sqrt(0.5 * variance));
    const double re = part(eng);
    const double im = part(eng);
    return {re, im};
}

} // namespace dmimo
