#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace amoebot {

// One of the six edge labels a particle uses to address a neighbor.
// Labels are cyclic; opposite(d) = (d+3) mod 6.
class Direction {
public:
  constexpr Direction() = default;
  explicit constexpr Direction(int label) : label_(((label % 6) + 6) % 6) {}

  constexpr int label() const { return label_; }
  constexpr Direction rotated(int steps) const { return Direction(label_ + steps); }

  auto operator<=>(const Direction&) const = default;

private:
  int label_ = 0;
};

constexpr Direction opposite(Direction d) { return d.rotated(3); }

// A node of the triangular lattice in axial coordinates.
struct AxialCoord {
  int q = 0;
  int r = 0;

  auto operator<=>(const AxialCoord&) const = default;
};

// Canonical direction table: label 0 is +q, successive labels rotate by 60
// degrees. All serialized direction labels refer to this table.
constexpr AxialCoord kDirectionOffsets[6] = {
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

constexpr AxialCoord neighbor(AxialCoord c, Direction d) {
  const AxialCoord& o = kDirectionOffsets[d.label()];
  return {c.q + o.q, c.r + o.r};
}

// Graph distance on the triangular lattice.
int lattice_distance(AxialCoord a, AxialCoord b);

// True iff the subgraph induced by `nodes` is connected. Empty and singleton
// sets are vacuously connected.
bool is_connected(const std::set<AxialCoord>& nodes);

std::string to_string(AxialCoord c);

}  // namespace amoebot

template <>
struct std::hash<amoebot::AxialCoord> {
  std::size_t operator()(const amoebot::AxialCoord& c) const noexcept {
    std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)) << 32) |
                      static_cast<std::uint32_t>(c.r);
    k *= 0x9E3779B97F4A7C15ULL;
    return static_cast<std::size_t>(k ^ (k >> 32));
  }
};
