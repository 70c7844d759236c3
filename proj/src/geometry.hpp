#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace dmimo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Fixed cell layout: a disc of radius `cell_radius_m` with `antenna_count`
// base-station antennas equally spaced on a concentric circle of radius
// `ring_radius_m`.
struct CellGeometry {
    double cell_radius_m = 1000.0;
    double ring_radius_m = 500.0;
    std::size_t antenna_count = 300;
};

struct RingLayout {
    std::vector<Vec2> antennas;
};

struct UserLocation {
    Vec2 position;
    double radius_m = 0.0;
};

// Throws ErrorCode::invalid_argument on non-positive radii, ring outside the
// cell, or zero antennas.
void validate_geometry(const CellGeometry& geom);

RingLayout build_ring(const CellGeometry& geom);

double antenna_user_distance(const Vec2& antenna, const Vec2& user);

// Smallest distance from `user` to any ring antenna.
double min_antenna_distance(const RingLayout& ring, const Vec2& user);

// Uniform draw over the disc of radius `cell_radius_m`, rejecting radii below
// `min_radius_m`. Radius is drawn before angle so consumers replay streams
// deterministically.
UserLocation sample_user(double cell_radius_m, double min_radius_m, std::mt19937_64& rng);

} // namespace dmimo
