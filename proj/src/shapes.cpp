#include "amoebot/shapes.hpp"

#include "amoebot/rng.hpp"

namespace amoebot::shapes {

std::set<AxialCoord> hexagon(AxialCoord center, int radius) {
  std::set<AxialCoord> out;
  for (int q = -radius; q <= radius; ++q) {
    for (int r = -radius; r <= radius; ++r) {
      if (std::abs(q + r) <= radius && std::abs(q) <= radius &&
          std::abs(r) <= radius) {
        out.insert({center.q + q, center.r + r});
      }
    }
  }
  return out;
}

int hexagon_radius_for(std::size_t n) {
  int radius = 0;
  while (1 + 3 * static_cast<std::size_t>(radius) * (radius + 1) < n) ++radius;
  return radius;
}

std::set<AxialCoord> line(AxialCoord start, std::size_t n) {
  std::set<AxialCoord> out;
  AxialCoord c = start;
  for (std::size_t i = 0; i < n; ++i) {
    out.insert(c);
    c = neighbor(c, Direction(0));
  }
  return out;
}

std::set<AxialCoord> parallelogram(AxialCoord origin, int width,
                                   std::size_t n) {
  std::set<AxialCoord> out;
  AxialCoord row = origin;
  while (out.size() < n) {
    AxialCoord c = row;
    for (int i = 0; i < width && out.size() < n; ++i) {
      out.insert(c);
      c = neighbor(c, Direction(0));
    }
    row = neighbor(row, Direction(5));
  }
  return out;
}

std::set<AxialCoord> random_blob(AxialCoord start, std::size_t n,
                                 std::uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, 0xB10B));
  std::set<AxialCoord> blob{start};
  // Candidate frontier kept as a sorted vector so growth order is a pure
  // function of the seed.
  std::vector<AxialCoord> frontier;
  auto extend = [&](AxialCoord c) {
    for (int d = 0; d < 6; ++d) {
      AxialCoord nb = neighbor(c, Direction(d));
      if (!blob.count(nb)) frontier.push_back(nb);
    }
  };
  extend(start);
  while (blob.size() < n && !frontier.empty()) {
    std::size_t i = rng.below(static_cast<std::uint32_t>(frontier.size()));
    AxialCoord pick = frontier[i];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
    if (blob.count(pick)) continue;
    blob.insert(pick);
    extend(pick);
  }
  return blob;
}

std::vector<AxialCoord> spiral_order(AxialCoord center, std::size_t n) {
  std::vector<AxialCoord> out{center};
  for (int ring = 1; out.size() < n; ++ring) {
    AxialCoord c = center;
    for (int i = 0; i < ring; ++i) c = neighbor(c, Direction(4));
    for (int side = 0; side < 6; ++side) {
      for (int step = 0; step < ring; ++step) {
        if (out.size() < n) out.push_back(c);
        c = neighbor(c, Direction(side));
      }
    }
  }
  return out;
}

}  // namespace amoebot::shapes
