#pragma once

#include <cstdint>
#include <vector>

#include "amoebot/errors.hpp"

namespace amoebot {

// Battery levels along a root-anchored path P_1..P_k, the object the
// parallel-schedule analysis runs on. The parallel dynamics cap batteries at
// kappa' = kappa - alpha; asynchronous snapshots use the full kappa.
struct EnergyConfigSnapshot {
  std::vector<double> batteries;
  double kappa_prime = 0.0;
};

// Suffix sums: delta[i] = sum of batteries[i..k-1].
std::vector<double> suffix_sums(const EnergyConfigSnapshot& c);

// One synchronous greedy step: the root harvests and every eligible parent
// passes, all reading the previous configuration. A parent passes when it
// holds at least alpha and its child is below kappa'; the root tops up to
// kappa' after its outgoing pass (pipelining).
EnergyConfigSnapshot parallel_step(const EnergyConfigSnapshot& c, double alpha);

// Steps the greedy parallel schedule from all-zero until every battery
// reaches kappa'; requires kappa/alpha integral. The result equals
// (kappa'/alpha) * k exactly.
std::uint64_t parallel_recharge_rounds(std::size_t k, double kappa,
                                       double alpha);

// Suffix-sum dominance a >= b (tolerance 1e-9); throws on length mismatch.
bool dominates(const EnergyConfigSnapshot& a, const EnergyConfigSnapshot& b);

// A rooted tree of at most 6 particles given as parent indices; entry 0 is
// the root and parent[0] is ignored.
struct RootedTree {
  std::vector<int> parent;
  std::size_t size() const { return parent.size(); }
};

// Worst case asynchronous rounds to recharge every battery from zero to
// kappa under inhibited harvest/share dynamics, maximized over all
// one-activation-per-particle-per-round orderings and over the arbitrary
// child choice in the sharing rule. Memoized exhaustive search; throws
// EngineFault if `horizon` rounds are exceeded.
std::uint64_t brute_force_worst_recharge(const RootedTree& tree, double kappa,
                                         double alpha,
                                         std::uint64_t horizon = 0);

// All non-isomorphic rooted trees with exactly n nodes, n <= 6.
std::vector<RootedTree> enumerate_rooted_trees(std::size_t n);

}  // namespace amoebot
