#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace dmimo {

void validate_geometry(const CellGeometry& geom) {
    if (!(geom.cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell_radius_m must be positive");
    if (!(geom.ring_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "ring_radius_m must be positive");
    if (geom.ring_radius_m >= geom.cell_radius_m)
        throw Error(ErrorCode::invalid_argument, "ring_radius_m must be smaller than cell_radius_m");
    if (geom.antenna_count == 0)
        throw Error(ErrorCode::invalid_argument, "antenna_count must be positive");
}

RingLayout build_ring(const CellGeometry& geom) {
    validate_geometry(geom);
    RingLayout ring;
    ring.antennas.resize(geom.antenna_count);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(geom.antenna_count);
    for (std::size_t m = 0; m < geom.antenna_count; ++m) {
        const double theta = step * static_cast<double>(m);
        ring.antennas[m] = {geom.ring_radius_m * std::cos(theta),
                            geom.ring_radius_m * std::sin(theta)};
    }
    return ring;
}

double antenna_user_distance(const Vec2& antenna, const Vec2& user) {
    return std::hypot(antenna.x - user.x, antenna.y - user.y);
}

double min_antenna_distance(const RingLayout& ring, const Vec2& user) {
    if (ring.antennas.empty())
        throw Error(ErrorCode::invalid_argument, "ring layout has no antennas");
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& a : ring.antennas)
        best = std::min(best, antenna_user_distance(a, user));
    return best;
}

UserLocation sample_user(double cell_radius_m, double min_radius_m, std::mt19937_64& rng) {
    if (!(cell_radius_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "cell_radius_m must be positive");
    if (min_radius_m < 0.0 || min_radius_m >= cell_radius_m)
        throw Error(ErrorCode::invalid_argument, "min_radius_m must lie in [0, cell_radius_m)");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Area-uniform radius: sqrt of a uniform draw, rejecting the exclusion disc.
    double radius = 0.0;
    do {
        radius = cell_radius_m * std::sqrt(unit(rng));
    } while (radius < min_radius_m);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    UserLocation loc;
    loc.radius_m = radius;
    loc.position = {radius * std::cos(angle), radius * std::sin(angle)};
    return loc;
}

} // namespace dmimo
