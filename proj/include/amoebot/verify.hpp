#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "amoebot/system.hpp"

namespace amoebot::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;  // counterexample seed/config on failure
};

// Builds a system over `shape` whose spanning tree rooted at `root` is wired
// directly (no setup rounds): seeded BFS adoption order, batteries zero.
SystemState tree_system(const std::set<AxialCoord>& shape, AxialCoord root,
                        double kappa, double alpha, double delta,
                        std::uint64_t seed);

// Inhibit propagation: one stressed particle forces every inhibit flag in
// its tree within 2*depth rounds. 100 seeded random trees, depth 2..8.
CheckResult lemma2(std::uint64_t base_seed);

// Path-is-worst: exhaustive worst-case recharge on every rooted tree of
// <= 5 particles is bounded by the equal-size path (kappa=3, alpha=1).
CheckResult lemma3();

// Dominance: every round of 200 seeded fair path schedules dominates the
// greedy parallel schedule (k in 2..8, kappa=10, alpha=1).
CheckResult lemma4(std::uint64_t base_seed);

// Parallel exactness: recharge takes exactly (kappa'/alpha)*k parallel
// rounds over (k, kappa/alpha) in {1..20} x {1..10}.
CheckResult lemma5();

// Release bound: once the last stressed particle recharges, some enabled
// particle acts within 2*depth further rounds. Shares lemma2's harness.
CheckResult lemma6(std::uint64_t base_seed);

// Prune propagation: depth-d members of a fresh faulty tree are pruned
// within d rounds. 100 seeded crash scenarios plus the ring chase-cycle
// construction.
CheckResult lemma8(std::uint64_t base_seed);

// Chase-cycle bound: a faulty-tree particle with a neighbor in the live
// forest is pruned at most 6 times before rejoining. Same scenarios.
CheckResult lemma9(std::uint64_t base_seed);

// Ledger identity on random mixed runs (faults, growth, random demand).
CheckResult conservation(std::uint64_t base_seed);

// scope: all | lemma2 | lemma3 | lemma4 | lemma5 | lemma6 | lemma8 | lemma9
// | conservation.
std::vector<CheckResult> run_scope(const std::string& scope,
                                   std::uint64_t seed);

}  // namespace amoebot::verify
