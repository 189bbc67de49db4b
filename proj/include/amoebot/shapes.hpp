#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "amoebot/lattice.hpp"

namespace amoebot::shapes {

// Centered hexagon of the given ring radius (radius 0 is the single center
// node); node count is 1 + 3*radius*(radius+1).
std::set<AxialCoord> hexagon(AxialCoord center, int radius);

// Smallest hexagon radius whose node count is >= n.
int hexagon_radius_for(std::size_t n);

// n nodes in a row starting at `start`, extending in direction 0.
std::set<AxialCoord> line(AxialCoord start, std::size_t n);

// Rows of `width` nodes stacked along direction 5, truncated to n total.
std::set<AxialCoord> parallelogram(AxialCoord origin, int width, std::size_t n);

// Seed-reproducible connected blob grown by random boundary accretion.
std::set<AxialCoord> random_blob(AxialCoord start, std::size_t n,
                                 std::uint64_t seed);

// The first n nodes of the ring spiral around `center`: the center itself,
// then each ring walked in a fixed orientation starting from the ring's
// direction-4 corner.
std::vector<AxialCoord> spiral_order(AxialCoord center, std::size_t n);

}  // namespace amoebot::shapes
