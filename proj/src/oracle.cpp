#include "amoebot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "amoebot/system.hpp"

namespace amoebot {

std::vector<double> suffix_sums(const EnergyConfigSnapshot& c) {
  std::vector<double> delta(c.batteries.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = c.batteries.size(); i-- > 0;) {
    acc += c.batteries[i];
    delta[i] = acc;
  }
  return delta;
}

EnergyConfigSnapshot parallel_step(const EnergyConfigSnapshot& c,
                                   double alpha) {
  const std::size_t k = c.batteries.size();
  const double kp = c.kappa_prime;
  std::vector<double> out_flow(k, 0.0);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (c.batteries[j] >= alpha && kp - c.batteries[j + 1] > kEnergyTol)
      out_flow[j] = std::min(alpha, kp - c.batteries[j + 1]);
  }
  EnergyConfigSnapshot next = c;
  for (std::size_t j = 0; j < k; ++j) {
    next.batteries[j] -= out_flow[j];
    if (j > 0) next.batteries[j] += out_flow[j - 1];
  }
  // The root tops up after its outgoing pass; a full root that passed alpha
  // re-harvests in the same step.
  if (k > 0) {
    double room = kp - next.batteries[0];
    if (room > kEnergyTol) next.batteries[0] += std::min(alpha, room);
  }
  return next;
}

std::uint64_t parallel_recharge_rounds(std::size_t k, double kappa,
                                       double alpha) {
  if (k == 0 || kappa <= 0.0 || alpha <= 0.0)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "need k >= 1, kappa > 0, alpha > 0");
  double ratio = kappa / alpha;
  if (std::abs(ratio - std::round(ratio)) > kEnergyTol)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "kappa/alpha must be a positive integer");
  const double kp = kappa - alpha;
  EnergyConfigSnapshot c{std::vector<double>(k, 0.0), kp};
  auto full = [&](const EnergyConfigSnapshot& cfg) {
    for (double e : cfg.batteries)
      if (std::abs(e - kp) > kEnergyTol) return false;
    return true;
  };
  std::uint64_t steps = 0;
  // (kp/alpha)*k with slack; exceeding it means the greedy rules are broken.
  std::uint64_t guard = static_cast<std::uint64_t>(ratio * k * 10 + 10);
  while (!full(c)) {
    c = parallel_step(c, alpha);
    if (++steps > guard)
      throw EngineFault("parallel schedule failed to converge");
  }
  return steps;
}

bool dominates(const EnergyConfigSnapshot& a, const EnergyConfigSnapshot& b) {
  if (a.batteries.size() != b.batteries.size())
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "dominance requires equal path lengths");
  std::vector<double> da = suffix_sums(a);
  std::vector<double> db = suffix_sums(b);
  for (std::size_t i = 0; i < da.size(); ++i)
    if (da[i] < db[i] - kEnergyTol) return false;
  return true;
}

namespace {

using UnitState = std::vector<int>;  // battery levels in units of alpha

// Applies one activation of particle `i` to `st`, branching over the
// arbitrary child choice; appends every possible successor to `out`.
void activation_branches(const RootedTree& tree, int units_capacity,
                         const UnitState& st, std::size_t i,
                         std::vector<UnitState>& out) {
  UnitState base = st;
  if (i == 0 && base[0] < units_capacity) base[0] += 1;  // root harvests
  if (base[i] >= 1) {
    bool any = false;
    for (std::size_t j = 0; j < tree.size(); ++j) {
      if (j != 0 && tree.parent[j] == static_cast<int>(i) &&
          base[j] < units_capacity) {
        UnitState next = base;
        next[i] -= 1;
        next[j] += 1;
        out.push_back(std::move(next));
        any = true;
      }
    }
    if (any) return;
  }
  out.push_back(std::move(base));
}

// Every state reachable by one full asynchronous round (each particle
// activated exactly once, any order, any child choices).
std::set<UnitState> round_outcomes(const RootedTree& tree, int units_capacity,
                                   const UnitState& start) {
  const std::size_t k = tree.size();
  std::set<std::pair<unsigned, UnitState>> seen;
  std::set<UnitState> done;
  std::vector<std::pair<unsigned, UnitState>> stack{{0u, start}};
  seen.insert(stack.front());
  while (!stack.empty()) {
    auto [mask, st] = std::move(stack.back());
    stack.pop_back();
    if (mask == (1u << k) - 1u) {
      done.insert(st);
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) continue;
      std::vector<UnitState> branches;
      activation_branches(tree, units_capacity, st, i, branches);
      for (UnitState& next : branches) {
        std::pair<unsigned, UnitState> key{mask | (1u << i), std::move(next)};
        if (seen.insert(key).second) stack.push_back(key);
      }
    }
  }
  return done;
}

std::uint64_t worst_from(const RootedTree& tree, int units_capacity,
                         const UnitState& st,
                         std::map<UnitState, std::uint64_t>& memo,
                         std::uint64_t horizon, std::uint64_t depth) {
  bool terminal = true;
  for (int e : st)
    if (e != units_capacity) {
      terminal = false;
      break;
    }
  if (terminal) return 0;
  if (depth > horizon)
    throw EngineFault("brute-force recharge exceeded its round horizon");
  auto it = memo.find(st);
  if (it != memo.end()) return it->second;
  std::uint64_t best = 0;
  for (const UnitState& next : round_outcomes(tree, units_capacity, st))
    best = std::max(best,
                    worst_from(tree, units_capacity, next, memo, horizon,
                               depth + 1));
  std::uint64_t result = 1 + best;
  memo[st] = result;
  return result;
}

std::string ahu_canon(const RootedTree& tree, std::size_t node) {
  std::vector<std::string> kids;
  for (std::size_t j = 1; j < tree.size(); ++j)
    if (tree.parent[j] == static_cast<int>(node))
      kids.push_back(ahu_canon(tree, j));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const std::string& k : kids) out += k;
  out += ")";
  return out;
}

}  // namespace

std::uint64_t brute_force_worst_recharge(const RootedTree& tree, double kappa,
                                         double alpha, std::uint64_t horizon) {
  if (tree.size() == 0 || tree.size() > 6)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "brute force is limited to trees of 1..6 particles");
  double ratio = kappa / alpha;
  if (alpha <= 0.0 || kappa <= 0.0 ||
      std::abs(ratio - std::round(ratio)) > kEnergyTol)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "kappa/alpha must be a positive integer");
  int units = static_cast<int>(std::llround(ratio));
  if (horizon == 0)
    horizon = static_cast<std::uint64_t>(10 * units * tree.size()) + 10;
  std::map<UnitState, std::uint64_t> memo;
  UnitState zero(tree.size(), 0);
  return worst_from(tree, units, zero, memo, horizon, 0);
}

std::vector<RootedTree> enumerate_rooted_trees(std::size_t n) {
  if (n == 0 || n > 6)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "tree enumeration is limited to 1..6 nodes");
  std::vector<RootedTree> out;
  std::set<std::string> seen;
  RootedTree t;
  t.parent.assign(n, -1);
  // parent[i] < i enumerates every labeled rooted tree on n nodes exactly
  // once; AHU canonization collapses isomorphic shapes.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (seen.insert(ahu_canon(t, 0)).second) out.push_back(t);
      return;
    }
    for (std::size_t p = 0; p < i; ++p) {
      t.parent[i] = static_cast<int>(p);
      self(self, i + 1);
    }
  };
  if (n == 1) {
    out.push_back(t);
  } else {
    rec(rec, 1);
  }
  return out;
}

}  // namespace amoebot
