#include "amoebot/energy.hpp"
#include "amoebot/metrics.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/shapes.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

SystemState path_system(std::size_t k, double kappa = 10.0,
                        double delta = 5.0) {
  return build_system(shapes::line({0, 0}, k), {{0, 0}}, kappa, 1.0,
                      DemandSpec{UniformConstant{delta}});
}

void wire_path(SystemState& s, std::size_t k) {
  for (std::size_t i = 1; i < k; ++i) {
    Particle& p = s.at({static_cast<int>(i), 0});
    p.role = Role::Active;
    p.parent = Direction(3);
  }
}

// Behavior whose perform always fails; exercises the usage rollback.
class FailingBehavior final : public Behavior {
public:
  std::optional<ActionDescriptor> enabled_action(const SystemState&,
                                                 AxialCoord) override {
    return ActionDescriptor{ActionDescriptor::Kind::NoopSpend, Direction(0),
                            std::nullopt};
  }
  bool perform(SystemState&, AxialCoord, const ActionDescriptor&) override {
    return false;
  }
};

}  // namespace

TEST_CASE("idle particle joins via a root or active neighbor") {
  SystemState s = path_system(3);
  EngineConfig cfg;
  auto b = demand_only_behavior();
  activate_energy(s, {1, 0}, *b, cfg);
  CHECK(s.at({1, 0}).role == Role::Active);
  CHECK(s.at({1, 0}).parent == Direction(3));  // points at the root
  // (2,0) only borders (1,0), which is now active.
  activate_energy(s, {2, 0}, *b, cfg);
  CHECK(s.at({2, 0}).role == Role::Active);
  CHECK(s.at({2, 0}).parent == Direction(3));
}

TEST_CASE("idle particle with no eligible neighbor stays idle") {
  SystemState s = path_system(3);
  EngineConfig cfg;
  auto b = demand_only_behavior();
  activate_energy(s, {2, 0}, *b, cfg);  // neighbor (1,0) still idle
  CHECK(s.at({2, 0}).role == Role::Idle);
  CHECK_FALSE(s.at({2, 0}).parent.has_value());
}

TEST_CASE("communicate raises stress from deficit or stressed children") {
  SystemState s = path_system(3);
  wire_path(s, 3);
  auto b = demand_only_behavior();

  Particle& p1 = s.at({1, 0});
  p1.e_bat = 3.0;
  communicate(s, {1, 0}, *b);
  CHECK(p1.stress);  // 3 < 5

  p1.e_bat = 5.0;
  s.at({2, 0}).stress = true;
  communicate(s, {1, 0}, *b);
  CHECK(p1.stress);  // stressed child

  s.at({2, 0}).stress = false;
  communicate(s, {1, 0}, *b);
  CHECK_FALSE(p1.stress);
  CHECK_FALSE(p1.inhibit);  // parent uninhibited
}

TEST_CASE("root expresses stress only through its inhibit flag") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  auto b = demand_only_behavior();
  Particle& root = s.at({0, 0});
  root.e_bat = 10.0;
  s.at({1, 0}).stress = true;
  communicate(s, {0, 0}, *b);
  CHECK(root.inhibit);
  CHECK_FALSE(root.stress);  // roots never raise the stress flag

  s.at({1, 0}).stress = false;
  communicate(s, {0, 0}, *b);
  CHECK_FALSE(root.inhibit);

  root.e_bat = 0.0;  // the root's own deficit also inhibits
  communicate(s, {0, 0}, *b);
  CHECK(root.inhibit);
}

TEST_CASE("active particles copy the parent inhibit flag") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  auto b = demand_only_behavior();
  s.at({0, 0}).inhibit = true;
  s.at({1, 0}).e_bat = 10.0;
  communicate(s, {1, 0}, *b);
  CHECK(s.at({1, 0}).inhibit);
  s.at({0, 0}).inhibit = false;
  communicate(s, {1, 0}, *b);
  CHECK_FALSE(s.at({1, 0}).inhibit);
}

TEST_CASE("sharing harvests at roots and caps at kappa") {
  SystemState s = path_system(1);
  EngineConfig cfg;
  s.at({0, 0}).e_bat = 9.5;
  share_energy(s, {0, 0}, cfg);
  CHECK(s.at({0, 0}).e_bat == doctest::Approx(10.0));
  CHECK(s.ledger().harvested == doctest::Approx(0.5));
}

TEST_CASE("transfers move min(alpha, room) and never overfill") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  EngineConfig cfg;
  Particle& root = s.at({0, 0});
  Particle& child = s.at({1, 0});

  root.e_bat = 5.0;
  child.e_bat = 9.5;
  s.ledger().harvested = 14.5;
  // Root tops up to 10 first, then passes the 0.5 of room.
  double moved = share_energy(s, {0, 0}, cfg);
  CHECK(moved == doctest::Approx(0.5));
  CHECK(root.e_bat == doctest::Approx(9.5));
  CHECK(child.e_bat == doctest::Approx(10.0));
  s.check_conservation();
}

TEST_CASE("a sender below alpha does not transfer") {
  SystemState s = path_system(3, 10.0, 5.0);
  wire_path(s, 3);
  EngineConfig cfg;
  Particle& mid = s.at({1, 0});
  mid.e_bat = 0.5;  // below alpha = 1
  CHECK(share_energy(s, {1, 0}, cfg) == doctest::Approx(0.0));
  CHECK(mid.e_bat == doctest::Approx(0.5));
}

TEST_CASE("usage spends exactly delta and bumps the demand index") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  auto b = demand_only_behavior();
  Particle& root = s.at({0, 0});
  root.e_bat = 10.0;
  s.ledger().harvested = 10.0;
  ActionOutcome out = use_energy(s, {0, 0}, *b);
  CHECK(out.performed);
  CHECK(out.energy_spent == doctest::Approx(5.0));
  CHECK(root.e_bat == doctest::Approx(5.0));
  CHECK(root.demand_index == 1);
  s.check_conservation();
}

TEST_CASE("usage guard is a plain comparison, no tolerance window") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  auto b = demand_only_behavior();
  Particle& p = s.at({1, 0});
  p.e_bat = 4.999999999;
  ActionOutcome out = use_energy(s, {1, 0}, *b);
  CHECK_FALSE(out.performed);
  CHECK(p.e_bat == doctest::Approx(4.999999999));
  CHECK(p.demand_index == 0);
}

TEST_CASE("inhibited particles forgo their actions") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  auto b = demand_only_behavior();
  Particle& p = s.at({1, 0});
  p.e_bat = 10.0;
  p.inhibit = true;
  ActionOutcome out = use_energy(s, {1, 0}, *b);
  CHECK_FALSE(out.performed);
  CHECK(p.e_bat == doctest::Approx(10.0));
}

TEST_CASE("a failing perform rolls the debit back") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  FailingBehavior b;
  Particle& p = s.at({1, 0});
  p.e_bat = 10.0;
  s.ledger().harvested = 10.0;
  ActionOutcome out = use_energy(s, {1, 0}, b);
  CHECK_FALSE(out.performed);
  CHECK(p.e_bat == doctest::Approx(10.0));
  CHECK(p.demand_index == 0);
  s.check_conservation();
}

TEST_CASE("behavior without enabled actions leaves state untouched") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  NullBehavior b;
  s.at({1, 0}).e_bat = 10.0;
  ActionOutcome out = use_energy(s, {1, 0}, b);
  CHECK_FALSE(out.performed);
  CHECK(s.at({1, 0}).e_bat == doctest::Approx(10.0));
}

TEST_CASE("full activation runs the three phases in order") {
  SystemState s = path_system(2);
  wire_path(s, 2);
  EngineConfig cfg;
  auto b = demand_only_behavior();
  Particle& root = s.at({0, 0});
  root.e_bat = 9.0;
  s.ledger().harvested = 9.0;
  // Communicate clears flags, share harvests to 10 then passes 1 to the
  // child, use spends 5 (9 + 1 - 1 - 5 = 4).
  ActionOutcome out = activate_energy(s, {0, 0}, *b, cfg);
  CHECK(out.performed);
  CHECK(root.e_bat == doctest::Approx(4.0));
  CHECK(s.at({1, 0}).e_bat == doctest::Approx(1.0));
  s.check_conservation();
}

TEST_CASE("setup joins the whole system within n rounds") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    auto shape = shapes::random_blob({0, 0}, 30, seed);
    std::vector<AxialCoord> nodes(shape.begin(), shape.end());
    SplitMix64 rng(seed);
    AxialCoord root = nodes[rng.below(30)];
    SystemState s = build_system(shape, {root}, 10.0, 1.0,
                                 DemandSpec{UniformConstant{5.0}});
    NullBehavior b;
    RunConfig rc;
    rc.schedule.seed = seed;
    rc.stop = StopCondition::max_rounds_only(30);
    std::optional<std::uint64_t> all_joined;
    rc.on_round = [&](const SystemState& sys, const RoundStats& stats) {
      if (!all_joined && stats.num_idle == 0) all_joined = stats.round;
    };
    run(s, b, rc);
    REQUIRE(all_joined.has_value());
    CHECK(*all_joined <= 30);
    check_invariants(s);
  }
}

TEST_CASE("batteries stay within bounds under random mixed activations") {
  auto shape = shapes::random_blob({0, 0}, 20, 99);
  SystemState s = build_system(shape, {*shape.begin()}, 7.0, 2.0,
                               DemandSpec{UniformConstant{3.0}});
  auto b = demand_only_behavior();
  RunConfig rc;
  rc.schedule.seed = 99;
  rc.stop = StopCondition::max_rounds_only(80);
  rc.on_round = [&](const SystemState& sys, const RoundStats&) {
    for (const auto& [c, p] : sys.occupancy()) {
      CHECK(p.e_bat >= -kEnergyTol);
      CHECK(p.e_bat <= sys.kappa() + kEnergyTol);
    }
  };
  run(s, *b, rc);  // run() also checks conservation each round
}
