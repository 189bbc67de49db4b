#include "amoebot/lattice.hpp"

#include <cstdlib>
#include <deque>

namespace amoebot {

int lattice_distance(AxialCoord a, AxialCoord b) {
  // Axial coords embed as cube coords (q, -q-r, r); the hex metric is half
  // the L1 distance between cubes.
  int dq = a.q - b.q;
  int dr = a.r - b.r;
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

bool is_connected(const std::set<AxialCoord>& nodes) {
  if (nodes.size() <= 1) return true;
  std::set<AxialCoord> seen;
  std::deque<AxialCoord> frontier{*nodes.begin()};
  seen.insert(*nodes.begin());
  while (!frontier.empty()) {
    AxialCoord c = frontier.front();
    frontier.pop_front();
    for (int d = 0; d < 6; ++d) {
      AxialCoord n = neighbor(c, Direction(d));
      if (nodes.count(n) && !seen.count(n)) {
        seen.insert(n);
        frontier.push_back(n);
      }
    }
  }
  return seen.size() == nodes.size();
}

std::string to_string(AxialCoord c) {
  return std::to_string(c.q) + "," + std::to_string(c.r);
}

}  // namespace amoebot
