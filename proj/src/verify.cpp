#include "amoebot/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "amoebot/behavior.hpp"
#include "amoebot/metrics.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/shapes.hpp"

namespace amoebot::verify {

namespace {

std::string coord_list(const std::set<AxialCoord>& coords) {
  std::string out;
  for (AxialCoord c : coords) {
    if (!out.empty()) out += ';';
    out += to_string(c);
  }
  return out;
}

int tree_depth(const SystemState& s) {
  int d = 0;
  for (const auto& [c, depth] : forest_depths(s)) d = std::max(d, depth);
  return d;
}

}  // namespace

SystemState tree_system(const std::set<AxialCoord>& shape, AxialCoord root,
                        double kappa, double alpha, double delta,
                        std::uint64_t seed) {
  SystemState s = build_system(shape, {root}, kappa, alpha,
                               DemandSpec{UniformConstant{delta}});
  // Seeded BFS adoption wires the spanning tree without running any setup
  // rounds, so measurements start from a fully formed forest.
  SplitMix64 rng(mix_seed(seed, 0x73EE));
  std::deque<AxialCoord> frontier{root};
  std::set<AxialCoord> joined{root};
  while (!frontier.empty()) {
    AxialCoord c = frontier.front();
    frontier.pop_front();
    std::vector<int> dirs{0, 1, 2, 3, 4, 5};
    deterministic_shuffle(dirs, rng);
    for (int d : dirs) {
      AxialCoord nb = neighbor(c, Direction(d));
      if (!shape.count(nb) || joined.count(nb)) continue;
      Particle& q = s.at(nb);
      q.role = Role::Active;
      q.parent = opposite(Direction(d));
      joined.insert(nb);
      frontier.push_back(nb);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lemma 2 / Lemma 6: signal propagation and release bounds share a harness.
// All batteries start empty with demand kappa, so every particle is stressed
// until fully recharged; kappa/alpha is much larger than any 2*depth bound.

namespace {

struct PropagationOutcome {
  bool ok = true;
  std::string details;
};

PropagationOutcome propagation_case(std::uint64_t seed, bool check_release) {
  const double kappa = 40.0, alpha = 1.0;
  SplitMix64 rng(mix_seed(seed, 0x1E44));
  std::size_t n = 6 + rng.below(19);
  auto shape = shapes::random_blob({0, 0}, n, mix_seed(seed, 1));
  std::vector<AxialCoord> nodes(shape.begin(), shape.end());
  AxialCoord root = nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))];
  SystemState s = tree_system(shape, root, kappa, alpha, kappa, seed);
  int d = tree_depth(s);
  if (d < 2 || d > 8) return {true, "skip"};

  auto behavior = demand_only_behavior();
  RunConfig rc;
  rc.schedule.seed = mix_seed(seed, 2);
  rc.schedule.kind = (seed % 2) ? ScheduleSpec::Kind::WeightedRandom
                                : ScheduleSpec::Kind::RoundPermutation;
  rc.stop = StopCondition::max_rounds_only(
      static_cast<std::uint64_t>(kappa * n * 3) + 100);

  std::optional<std::uint64_t> all_inhibited_round;
  std::optional<std::uint64_t> all_recharged_round;
  std::optional<std::uint64_t> first_action_round;
  rc.on_round = [&](const SystemState& sys, const RoundStats& stats) {
    if (!all_inhibited_round) {
      bool all = true;
      for (const auto& [c, p] : sys.occupancy())
        if (!p.inhibit) {
          all = false;
          break;
        }
      if (all) all_inhibited_round = stats.round;
    }
    if (!all_recharged_round) {
      bool all = true;
      for (const auto& [c, p] : sys.occupancy())
        if (p.e_bat < kappa) {
          all = false;
          break;
        }
      if (all) all_recharged_round = stats.round;
    }
    if (!first_action_round && stats.actions_performed > 0)
      first_action_round = stats.round;
  };
  RunReport report = run(s, *behavior, rc);
  (void)report;

  std::string ctx = " (seed=" + std::to_string(seed) + " n=" +
                    std::to_string(n) + " depth=" + std::to_string(d) + ")";
  if (!all_inhibited_round)
    return {false, "inhibit flags never covered the tree" + ctx};
  if (*all_inhibited_round > static_cast<std::uint64_t>(2 * d))
    return {false,
            "inhibit coverage took " + std::to_string(*all_inhibited_round) +
                " rounds, bound " + std::to_string(2 * d) + ctx};
  if (check_release) {
    if (!all_recharged_round)
      return {false, "system never fully recharged" + ctx};
    if (!first_action_round)
      return {false, "no action ever fired after recharge" + ctx};
    if (*first_action_round > *all_recharged_round + 2 * d)
      return {false, "first action at round " +
                         std::to_string(*first_action_round) +
                         ", last recharge at " +
                         std::to_string(*all_recharged_round) + ", bound +" +
                         std::to_string(2 * d) + ctx};
  }
  return {true, ""};
}

CheckResult propagation_suite(const char* name, std::uint64_t base_seed,
                              bool check_release) {
  int accepted = 0;
  std::uint64_t candidate = 0;
  while (accepted < 100) {
    PropagationOutcome out =
        propagation_case(mix_seed(base_seed, candidate++), check_release);
    if (out.details == "skip") continue;
    ++accepted;
    if (!out.ok) return {name, false, out.details};
  }
  return {name, true, "100 seeded trees, zero violations"};
}

}  // namespace

CheckResult lemma2(std::uint64_t base_seed) {
  return propagation_suite("lemma2", base_seed, false);
}

CheckResult lemma6(std::uint64_t base_seed) {
  return propagation_suite("lemma6", base_seed, true);
}

// ---------------------------------------------------------------------------

CheckResult lemma3() {
  const double kappa = 3.0, alpha = 1.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    RootedTree path;
    path.parent.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      path.parent[i] = static_cast<int>(i) - 1;
    std::uint64_t path_worst = brute_force_worst_recharge(path, kappa, alpha);
    for (const RootedTree& tree : enumerate_rooted_trees(n)) {
      std::uint64_t t = brute_force_worst_recharge(tree, kappa, alpha);
      if (t > path_worst) {
        std::string shape;
        for (int p : tree.parent) shape += std::to_string(p) + " ";
        return {"lemma3", false,
                "tree [" + shape + "] of size " + std::to_string(n) +
                    " recharges in " + std::to_string(t) +
                    " worst-case rounds, path takes " +
                    std::to_string(path_worst)};
      }
    }
  }
  return {"lemma3", true,
          "all rooted trees <= 5 particles bounded by the path"};
}

CheckResult lemma4(std::uint64_t base_seed) {
  const double kappa = 10.0, alpha = 1.0;
  int runs = 0;
  for (std::size_t k = 2; runs < 200; k = (k == 8) ? 2 : k + 1) {
    std::uint64_t seed = mix_seed(base_seed, 0x40D, runs);
    auto shape = shapes::line({0, 0}, k);
    SystemState s = tree_system(shape, {0, 0}, kappa, alpha, kappa, seed);

    std::vector<EnergyConfigSnapshot> parallel;
    parallel.push_back({std::vector<double>(k, 0.0), kappa - alpha});
    std::uint64_t horizon =
        static_cast<std::uint64_t>((kappa - alpha) / alpha * k);
    for (std::uint64_t i = 0; i < horizon; ++i)
      parallel.push_back(parallel_step(parallel.back(), alpha));

    NullBehavior behavior;
    RunConfig rc;
    rc.schedule.seed = seed;
    rc.schedule.kind = (runs % 2) ? ScheduleSpec::Kind::WeightedRandom
                                  : ScheduleSpec::Kind::RoundPermutation;
    rc.stop = StopCondition::max_rounds_only(horizon);
    std::string violation;
    rc.on_round = [&](const SystemState& sys, const RoundStats& stats) {
      if (!violation.empty()) return;
      EnergyConfigSnapshot async{std::vector<double>(), kappa};
      for (std::size_t i = 0; i < k; ++i)
        async.batteries.push_back(
            sys.at({static_cast<int>(i), 0}).e_bat);
      if (!dominates(async, parallel[stats.round]))
        violation = "round " + std::to_string(stats.round) + " of k=" +
                    std::to_string(k) + " seed=" + std::to_string(seed);
    };
    run(s, behavior, rc);
    if (!violation.empty())
      return {"lemma4", false, "asynchronous config fails to dominate at " + violation};
    ++runs;
  }
  return {"lemma4", true, "200 fair path schedules, dominance at every round"};
}

CheckResult lemma5() {
  for (std::size_t k = 1; k <= 20; ++k) {
    for (int ratio = 1; ratio <= 10; ++ratio) {
      double kappa = static_cast<double>(ratio);
      std::uint64_t expected = static_cast<std::uint64_t>(ratio - 1) * k;
      std::uint64_t got = parallel_recharge_rounds(k, kappa, 1.0);
      if (got != expected)
        return {"lemma5", false,
                "k=" + std::to_string(k) + " kappa=" + std::to_string(ratio) +
                    ": got " + std::to_string(got) + ", expected " +
                    std::to_string(expected)};
    }
  }
  // Non-unit transfer rate spot checks.
  if (parallel_recharge_rounds(5, 4.0, 2.0) != 5)
    return {"lemma5", false, "k=5 kappa=4 alpha=2 mismatch"};
  return {"lemma5", true, "exact on the 20x10 grid"};
}

// ---------------------------------------------------------------------------
// Lemma 8 / Lemma 9: seeded single-crash scenarios plus the ring
// construction where a pruned particle keeps adopting its own descendants.

namespace {

struct CrashScenario {
  SystemState system;
  AxialCoord victim;
  std::map<AxialCoord, int> faulty_depth;     // at crash time
  std::set<AxialCoord> faulty;                // F' members at crash time
  std::set<AxialCoord> with_live_neighbor;    // F' members adjacent to F*
};

std::optional<CrashScenario> random_crash_scenario(std::uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, 0xC4A5));
  std::size_t n = 8 + rng.below(33);
  auto shape = shapes::random_blob({0, 0}, n, mix_seed(seed, 3));
  std::vector<AxialCoord> nodes(shape.begin(), shape.end());
  AxialCoord root = nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))];
  SystemState built = tree_system(shape, root, 10.0, 1.0, 5.0, seed);

  std::vector<AxialCoord> candidates;
  for (AxialCoord c : nodes)
    if (c != root && !children_of(built, c).empty()) candidates.push_back(c);
  deterministic_shuffle(candidates, rng);
  for (AxialCoord victim : candidates) {
    SystemState probe = built;
    if (!inject_crash(probe, victim)) continue;
    CrashScenario sc{std::move(built), victim, forest_depths(probe), {}, {}};
    ForestPartition part = classify_forest(probe);
    sc.faulty = part.faulty;
    for (AxialCoord u : sc.faulty) {
      for (int d = 0; d < 6; ++d) {
        if (part.root_reachable.count(neighbor(u, Direction(d)))) {
          sc.with_live_neighbor.insert(u);
          break;
        }
      }
    }
    return sc;
  }
  return std::nullopt;
}

// Ten-particle layout in which the crash encloses P1 in a ring of its own
// descendants: P1 must chase the dissolving subtree around the ring before
// the repair stabilizes through the bridge particle.
CrashScenario chase_cycle_scenario() {
  std::map<AxialCoord, Particle> occ;
  auto put = [&](AxialCoord c, Role role, std::optional<AxialCoord> parent) {
    Particle p;
    p.role = role;
    if (parent) {
      for (int d = 0; d < 6; ++d)
        if (neighbor(c, Direction(d)) == *parent) p.parent = Direction(d);
    }
    occ.emplace(c, p);
  };
  AxialCoord R{3, 0}, Q{2, 0}, B{1, 1}, P0{1, 0};
  AxialCoord P1{0, 0}, P2{0, 1}, P3{-1, 1}, P4{-1, 0}, P5{0, -1}, P6{1, -1};
  put(R, Role::Root, std::nullopt);
  put(Q, Role::Active, R);
  put(B, Role::Active, Q);
  put(P0, Role::Active, Q);
  put(P1, Role::Active, P0);
  put(P2, Role::Active, P1);
  put(P3, Role::Active, P2);
  put(P4, Role::Active, P3);
  put(P5, Role::Active, P4);
  put(P6, Role::Active, P5);
  SystemState s(std::move(occ), 10.0, 1.0, DemandSpec{UniformConstant{5.0}});

  CrashScenario sc{std::move(s), P0, {}, {}, {}};
  SystemState probe = sc.system;
  if (!inject_crash(probe, P0)) throw EngineFault("chase-cycle layout invalid");
  sc.faulty_depth = forest_depths(probe);
  ForestPartition part = classify_forest(probe);
  sc.faulty = part.faulty;
  for (AxialCoord u : sc.faulty)
    for (int d = 0; d < 6; ++d)
      if (part.root_reachable.count(neighbor(u, Direction(d)))) {
        sc.with_live_neighbor.insert(u);
        break;
      }
  return sc;
}

struct RepairCaseOutcome {
  bool ok = true;
  std::string details;
};

RepairCaseOutcome repair_case(CrashScenario sc, std::uint64_t seed,
                              bool check_prunes, bool check_chase) {
  std::size_t m = sc.faulty.size();
  auto behavior = demand_only_behavior();
  RunConfig rc;
  rc.schedule.seed = mix_seed(seed, 4);
  rc.stop = StopCondition::max_rounds_only(40 * m * m + 200);
  rc.crash_script = {{1, sc.victim}};
  rc.record_repair_events = true;

  std::optional<std::uint64_t> stabilized_round;
  rc.on_round = [&](const SystemState& sys, const RoundStats& stats) {
    if (stabilized_round) return;
    ForestPartition part = classify_forest(sys);
    if (part.faulty.empty() && part.idle.empty())
      stabilized_round = stats.round;
  };
  RunReport report = run(sc.system, *behavior, rc);

  std::string ctx = " (seed=" + std::to_string(seed) + " m=" +
                    std::to_string(m) + " victim=" + to_string(sc.victim) + ")";
  if (!report.crash_events.at(0).accepted)
    return {false, "scripted crash rejected" + ctx};
  if (!stabilized_round)
    return {false, "faulty trees never fully rejoined" + ctx};

  if (check_prunes) {
    std::map<AxialCoord, std::uint64_t> first_prune;
    for (const RepairEvent& ev : report.repair_events)
      if (ev.kind == RepairOutcome::Kind::Pruned && !first_prune.count(ev.coord))
        first_prune[ev.coord] = ev.round;
    for (AxialCoord u : sc.faulty) {
      auto it = first_prune.find(u);
      int d = sc.faulty_depth.at(u);
      if (it == first_prune.end())
        return {false, to_string(u) + " was never pruned" + ctx};
      if (it->second > static_cast<std::uint64_t>(d))
        return {false, to_string(u) + " at depth " + std::to_string(d) +
                           " pruned in round " + std::to_string(it->second) +
                           ctx};
    }
  }
  if (check_chase) {
    for (AxialCoord u : sc.with_live_neighbor) {
      int count = prune_count(sc.system, u);
      if (count > 6)
        return {false, to_string(u) + " pruned " + std::to_string(count) +
                           " times despite a live-forest neighbor" + ctx};
    }
  }
  return {true, ""};
}

CheckResult repair_suite(const char* name, std::uint64_t base_seed,
                         bool check_prunes, bool check_chase) {
  RepairCaseOutcome out =
      repair_case(chase_cycle_scenario(), base_seed, check_prunes, check_chase);
  if (!out.ok) return {name, false, "chase-cycle construction: " + out.details};

  int accepted = 0;
  std::uint64_t candidate = 0;
  while (accepted < 100) {
    std::uint64_t seed = mix_seed(base_seed, 0x8E9, candidate++);
    auto scenario = random_crash_scenario(seed);
    if (!scenario) continue;
    ++accepted;
    out = repair_case(std::move(*scenario), seed, check_prunes, check_chase);
    if (!out.ok) return {name, false, out.details};
  }
  return {name, true, "chase-cycle construction + 100 seeded crash scenarios"};
}

}  // namespace

CheckResult lemma8(std::uint64_t base_seed) {
  return repair_suite("lemma8", base_seed, true, false);
}

CheckResult lemma9(std::uint64_t base_seed) {
  return repair_suite("lemma9", base_seed, false, true);
}

// ---------------------------------------------------------------------------

CheckResult conservation(std::uint64_t base_seed) {
  for (int i = 0; i < 25; ++i) {
    std::uint64_t seed = mix_seed(base_seed, 0xC0, i);
    SplitMix64 rng(mix_seed(seed, 5));
    std::size_t n = 5 + rng.below(26);
    double kappa = 4.0 + rng.below(9);
    double alpha = (i % 3 == 0) ? 0.5 : 1.0 + rng.below(2);
    auto shape = shapes::random_blob({0, 0}, n, seed);
    std::vector<AxialCoord> nodes(shape.begin(), shape.end());
    std::set<AxialCoord> roots;
    std::size_t root_count = 1 + rng.below(3);
    for (std::size_t r = 0; r < root_count; ++r)
      roots.insert(nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))]);

    DemandSpec demand;
    demand.kind = SeededRandomRange{0.5, std::min(kappa, 3.0), seed};
    SystemState s = build_system(shape, roots, kappa, alpha, demand);
    if (i % 4 == 1) randomize_orientations(s, seed);

    std::unique_ptr<Behavior> behavior;
    if (i % 3 == 0)
      behavior = reproduction_behavior(std::min(kappa, 3.0), n + 15, seed);
    else if (i % 3 == 1)
      behavior = demand_only_behavior();
    else
      behavior = std::make_unique<NullBehavior>();

    RunConfig rc;
    rc.schedule.seed = seed;
    rc.schedule.kind = (i % 2) ? ScheduleSpec::Kind::WeightedRandom
                               : ScheduleSpec::Kind::RoundPermutation;
    rc.stop = StopCondition::max_rounds_only(60);
    if (i % 3 != 0 && n > 6) {
      // One scripted crash; the injector may reject it, which is fine.
      rc.crash_script = {
          {2 + rng.below(8),
           nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))]}};
    }
    try {
      run(s, *behavior, rc);  // run() re-checks the ledger every round
      s.check_conservation();
    } catch (const EngineFault& e) {
      return {"conservation", false,
              std::string(e.what()) + " (seed=" + std::to_string(seed) + ")"};
    }
  }
  return {"conservation", true, "25 mixed seeded runs, ledger balanced"};
}

std::vector<CheckResult> run_scope(const std::string& scope,
                                   std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto want = [&](const char* name) {
    return scope == "all" || scope == name;
  };
  if (want("lemma2")) out.push_back(lemma2(seed));
  if (want("lemma3")) out.push_back(lemma3());
  if (want("lemma4")) out.push_back(lemma4(seed));
  if (want("lemma5")) out.push_back(lemma5());
  if (want("lemma6")) out.push_back(lemma6(seed));
  if (want("lemma8")) out.push_back(lemma8(seed));
  if (want("lemma9")) out.push_back(lemma9(seed));
  if (want("conservation")) out.push_back(conservation(seed));
  if (out.empty())
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "unknown verify scope: " + scope);
  return out;
}

}  // namespace amoebot::verify
