#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "amoebot/lattice.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/shapes.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

// Independent graph-distance oracle: breadth-first search over the lattice.
int bfs_distance(AxialCoord a, AxialCoord b) {
  std::map<AxialCoord, int> dist{{a, 0}};
  std::deque<AxialCoord> frontier{a};
  while (!frontier.empty()) {
    AxialCoord c = frontier.front();
    frontier.pop_front();
    if (c == b) return dist[c];
    for (int d = 0; d < 6; ++d) {
      AxialCoord n = neighbor(c, Direction(d));
      if (!dist.count(n)) {
        dist[n] = dist[c] + 1;
        frontier.push_back(n);
      }
    }
  }
  return -1;
}

// Independent connectivity oracle: union-find over induced edges.
bool union_find_connected(const std::set<AxialCoord>& nodes) {
  if (nodes.size() <= 1) return true;
  std::vector<AxialCoord> v(nodes.begin(), nodes.end());
  std::map<AxialCoord, std::size_t> index;
  for (std::size_t i = 0; i < v.size(); ++i) index[v[i]] = i;
  std::vector<std::size_t> parent(v.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int d = 0; d < 6; ++d) {
      auto it = index.find(neighbor(v[i], Direction(d)));
      if (it != index.end()) parent[find(i)] = find(it->second);
    }
  }
  std::size_t root = find(0);
  for (std::size_t i = 1; i < v.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace

TEST_CASE("direction zero maps to the canonical +q offset") {
  CHECK(neighbor({0, 0}, Direction(0)) == AxialCoord{1, 0});
}

TEST_CASE("opposite directions invert neighbor steps") {
  CHECK(neighbor(neighbor({2, -1}, Direction(4)), Direction(1)) ==
        AxialCoord{2, -1});
  SplitMix64 rng(7);
  for (int i = 0; i < 50; ++i) {
    AxialCoord c{static_cast<int>(rng.below(41)) - 20,
                 static_cast<int>(rng.below(41)) - 20};
    for (int d = 0; d < 6; ++d) {
      CHECK(neighbor(neighbor(c, Direction(d)), opposite(Direction(d))) == c);
      CHECK(opposite(Direction(d)).label() == (d + 3) % 6);
    }
  }
}

TEST_CASE("every node has six distinct neighbors at distance one") {
  std::set<AxialCoord> nbrs;
  for (int d = 0; d < 6; ++d) nbrs.insert(neighbor({5, 5}, Direction(d)));
  CHECK(nbrs.size() == 6);
  for (AxialCoord n : nbrs) CHECK(lattice_distance({5, 5}, n) == 1);
}

TEST_CASE("lattice distance basics") {
  CHECK(lattice_distance({0, 0}, {0, 0}) == 0);
  CHECK(lattice_distance({0, 0}, {1, 0}) == 1);
  CHECK(lattice_distance({0, 0}, {3, -2}) == 3);  // matches the BFS oracle
  CHECK(bfs_distance({0, 0}, {3, -2}) == 3);
}

TEST_CASE("lattice distance agrees with breadth-first search") {
  SplitMix64 rng(11);
  for (int i = 0; i < 40; ++i) {
    AxialCoord a{static_cast<int>(rng.below(21)) - 10,
                 static_cast<int>(rng.below(21)) - 10};
    AxialCoord b{static_cast<int>(rng.below(21)) - 10,
                 static_cast<int>(rng.below(21)) - 10};
    int expected = bfs_distance(a, b);
    CHECK(lattice_distance(a, b) == expected);
    CHECK(lattice_distance(b, a) == expected);
  }
}

TEST_CASE("distance satisfies the triangle inequality") {
  SplitMix64 rng(13);
  for (int i = 0; i < 60; ++i) {
    AxialCoord a{static_cast<int>(rng.below(17)) - 8,
                 static_cast<int>(rng.below(17)) - 8};
    AxialCoord b{static_cast<int>(rng.below(17)) - 8,
                 static_cast<int>(rng.below(17)) - 8};
    AxialCoord c{static_cast<int>(rng.below(17)) - 8,
                 static_cast<int>(rng.below(17)) - 8};
    CHECK(lattice_distance(a, c) <=
          lattice_distance(a, b) + lattice_distance(b, c));
  }
}

TEST_CASE("connectivity basics") {
  CHECK(is_connected({}));
  CHECK(is_connected({{4, 4}}));
  CHECK(is_connected({{0, 0}, {1, 0}, {2, 0}}));
  CHECK_FALSE(is_connected({{0, 0}, {2, 0}}));
}

TEST_CASE("connectivity agrees with union-find on random node sets") {
  SplitMix64 rng(17);
  for (int i = 0; i < 60; ++i) {
    std::set<AxialCoord> nodes;
    std::size_t n = rng.below(50);
    for (std::size_t j = 0; j < n; ++j)
      nodes.insert({static_cast<int>(rng.below(9)) - 4,
                    static_cast<int>(rng.below(9)) - 4});
    CHECK(is_connected(nodes) == union_find_connected(nodes));
  }
}

TEST_CASE("shape helpers") {
  CHECK(shapes::hexagon({0, 0}, 5).size() == 91);
  CHECK(shapes::hexagon({3, -2}, 0) == std::set<AxialCoord>{{3, -2}});
  CHECK(shapes::line({0, 0}, 4).size() == 4);
  CHECK(is_connected(shapes::line({2, 1}, 9)));
  CHECK(shapes::parallelogram({0, 0}, 5, 19).size() == 19);
  CHECK(is_connected(shapes::parallelogram({0, 0}, 5, 19)));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto blob = shapes::random_blob({0, 0}, 30, seed);
    CHECK(blob.size() == 30);
    CHECK(is_connected(blob));
    CHECK(blob == shapes::random_blob({0, 0}, 30, seed));  // seed-reproducible
  }
}

TEST_CASE("spiral order covers hexagons ring by ring") {
  auto spiral = shapes::spiral_order({0, 0}, 91);
  CHECK(spiral.size() == 91);
  std::set<AxialCoord> from_spiral(spiral.begin(), spiral.end());
  CHECK(from_spiral == shapes::hexagon({0, 0}, 5));
  CHECK(spiral[0] == AxialCoord{0, 0});
  for (std::size_t i = 1; i < 7; ++i)
    CHECK(lattice_distance({0, 0}, spiral[i]) == 1);
  // Every slot touches an earlier slot, so settled prefixes stay connected.
  for (std::size_t i = 1; i < spiral.size(); ++i) {
    bool touches_earlier = false;
    for (std::size_t j = 0; j < i && !touches_earlier; ++j)
      touches_earlier = lattice_distance(spiral[i], spiral[j]) == 1;
    CHECK(touches_earlier);
  }
}
