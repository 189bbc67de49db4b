#include "amoebot/shapes.hpp"
#include "amoebot/system.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

SystemState three_path(double kappa = 10.0, double delta = 5.0) {
  return build_system(shapes::line({0, 0}, 3), {{0, 0}}, kappa, 1.0,
                      DemandSpec{UniformConstant{delta}});
}

}  // namespace

TEST_CASE("build_system initializes per the variable table") {
  SystemState s = build_system(shapes::hexagon({0, 0}, 5), {{0, 0}}, 10.0, 1.0,
                               DemandSpec{UniformConstant{5.0}});
  CHECK(s.population() == 91);
  CHECK(total_energy(s) == doctest::Approx(0.0));
  int roots = 0;
  for (const auto& [c, p] : s.occupancy()) {
    CHECK(p.e_bat == 0.0);
    CHECK_FALSE(p.parent.has_value());
    CHECK_FALSE(p.stress);
    CHECK_FALSE(p.inhibit);
    CHECK_FALSE(p.prune);
    CHECK_FALSE(p.crashed);
    if (p.role == Role::Root) ++roots;
    else CHECK(p.role == Role::Idle);
  }
  CHECK(roots == 1);
  CHECK(s.at({0, 0}).role == Role::Root);
}

TEST_CASE("build_system rejects invalid instances with distinct errors") {
  DemandSpec d5{UniformConstant{5.0}};
  auto kind_of = [](auto fn) {
    try {
      fn();
    } catch (const ValidationError& e) {
      return e.kind();
    }
    return ValidationError::Kind::BadConfig;
  };
  CHECK(kind_of([&] { build_system({{0, 0}, {2, 0}}, {{0, 0}}, 10, 1, d5); }) ==
        ValidationError::Kind::DisconnectedShape);
  CHECK(kind_of([&] { build_system({{0, 0}}, {}, 10, 1, d5); }) ==
        ValidationError::Kind::EmptyRoots);
  CHECK(kind_of([&] { build_system({{0, 0}}, {{5, 5}}, 10, 1, d5); }) ==
        ValidationError::Kind::RootOutsideShape);
  CHECK(kind_of([&] {
          build_system({{0, 0}}, {{0, 0}}, 10, 1,
                       DemandSpec{UniformConstant{11.0}});
        }) == ValidationError::Kind::DemandExceedsCapacity);
  CHECK(kind_of([&] { build_system({{0, 0}}, {{0, 0}}, 0.0, 1, d5); }) ==
        ValidationError::Kind::NonPositiveParameter);
  CHECK(kind_of([&] { build_system({{0, 0}}, {{0, 0}}, 10, -1, d5); }) ==
        ValidationError::Kind::NonPositiveParameter);
}

TEST_CASE("children are neighbors whose parent points back") {
  SystemState s = three_path();
  Particle& p1 = s.at({1, 0});
  p1.role = Role::Active;
  p1.parent = Direction(3);  // points at (0,0)
  CHECK(children_of(s, {0, 0}) == std::vector<Direction>{Direction(0)});
  CHECK(children_of(s, {1, 0}).empty());  // leaf
  CHECK(children_of(s, {2, 0}).empty());

  // A three-child star around (0,0).
  SystemState star = build_system(
      {{0, 0}, {1, 0}, {0, 1}, {-1, 0}}, {{0, 0}}, 10.0, 1.0,
      DemandSpec{UniformConstant{5.0}});
  for (AxialCoord c : {AxialCoord{1, 0}, AxialCoord{0, 1}, AxialCoord{-1, 0}}) {
    Particle& q = star.at(c);
    q.role = Role::Active;
    for (int d = 0; d < 6; ++d)
      if (neighbor(c, Direction(d)) == AxialCoord{0, 0}) q.parent = Direction(d);
  }
  CHECK(children_of(star, {0, 0}).size() == 3);

  // Crashed children are invisible to the child query.
  star.mark_crashed({1, 0});
  CHECK(children_of(star, {0, 0}).size() == 2);
}

TEST_CASE("stress is a strict battery-demand comparison") {
  SystemState s = three_path(10.0, 5.0);
  Particle& p = s.at({1, 0});
  p.role = Role::Active;
  p.parent = Direction(3);
  p.e_bat = 3.0;
  CHECK(is_stressed(s, {1, 0}));
  p.e_bat = 5.0;
  CHECK_FALSE(is_stressed(s, {1, 0}));
  p.e_bat = 0.0;
  CHECK(is_stressed(s, {1, 0}));
}

TEST_CASE("total energy sums live batteries only") {
  SystemState s = three_path();
  CHECK(total_energy(s) == doctest::Approx(0.0));
  s.at({1, 0}).e_bat = 4.0;
  s.at({2, 0}).e_bat = 2.5;
  CHECK(total_energy(s) == doctest::Approx(6.5));
  s.ledger().harvested = 6.5;
  s.check_conservation();
  s.mark_crashed({2, 0});
  CHECK(total_energy(s) == doctest::Approx(4.0));
  s.check_conservation();  // crashed energy moved to the ledger
}

TEST_CASE("demand streams") {
  DemandSpec uniform{UniformConstant{5.0}};
  CHECK(uniform.evaluate({3, 3}, 0) == 5.0);
  CHECK(uniform.evaluate({3, 3}, 99) == 5.0);

  DemandSpec seq;
  seq.kind = PerParticleSequence{2.0, {{{0, 0}, {1.0, 3.0}}}};
  CHECK(seq.evaluate({0, 0}, 0) == 1.0);
  CHECK(seq.evaluate({0, 0}, 1) == 3.0);
  CHECK(seq.evaluate({0, 0}, 2) == 1.0);  // cycles
  CHECK(seq.evaluate({5, 5}, 0) == 2.0);  // default elsewhere
  CHECK(seq.max_value() == 3.0);

  DemandSpec rnd;
  rnd.kind = SeededRandomRange{1.0, 4.0, 42};
  double v0 = rnd.evaluate({1, 2}, 0);
  CHECK(v0 >= 1.0);
  CHECK(v0 < 4.0);
  CHECK(rnd.evaluate({1, 2}, 0) == v0);     // memo-consistent reads
  CHECK(rnd.evaluate({1, 2}, 1) != v0);     // indexed stream
  CHECK(rnd.max_value() == 4.0);
}

TEST_CASE("orientation randomization only moves cursor starts") {
  SystemState s = three_path();
  randomize_orientations(s, 9);
  SystemState t = three_path();
  randomize_orientations(t, 9);
  for (const auto& [c, p] : s.occupancy()) {
    CHECK(p.rr_cursor == t.at(c).rr_cursor);  // deterministic per seed
    CHECK(p.rr_cursor.label() >= 0);
    CHECK(p.rr_cursor.label() < 6);
  }
}

TEST_CASE("snapshot serializes coordinates as q,r keys") {
  SystemState s = three_path();
  std::string snap = snapshot_json(s);
  CHECK(snap.find("\"0,0\"") != std::string::npos);
  CHECK(snap.find("\"2,0\"") != std::string::npos);
  CHECK(snap.find("\"kappa\": 10.0") != std::string::npos);
}
