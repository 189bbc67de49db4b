#include "amoebot/energy.hpp"

#include <algorithm>

#include "amoebot/rng.hpp"

namespace amoebot {

const char* to_string(ActionDescriptor::Kind kind) {
  switch (kind) {
    case ActionDescriptor::Kind::NoopSpend: return "noop";
    case ActionDescriptor::Kind::Move: return "move";
    case ActionDescriptor::Kind::Reproduce: return "reproduce";
  }
  return "?";
}

std::optional<double> effective_demand(const SystemState& s, AxialCoord c,
                                       Behavior& behavior) {
  auto action = behavior.enabled_action(s, c);
  if (!action) return std::nullopt;
  if (action->cost) return *action->cost;
  return s.next_demand(c);
}

std::optional<Direction> select_parent_round_robin(SystemState& s,
                                                   AxialCoord c) {
  Particle& p = s.at(c);
  for (int i = 0; i < 6; ++i) {
    Direction d = p.rr_cursor.rotated(i);
    const Particle* nb = s.find(neighbor(c, d));
    if (nb && !nb->crashed && !nb->prune &&
        (nb->role == Role::Root || nb->role == Role::Active)) {
      p.rr_cursor = d.rotated(1);
      return d;
    }
  }
  return std::nullopt;
}

void communicate(SystemState& s, AxialCoord c, Behavior& behavior) {
  Particle& p = s.at(c);
  bool deficit = false;
  if (auto demand = effective_demand(s, c, behavior)) {
    deficit = p.e_bat < *demand;
  }
  bool stressed_child = false;
  for (Direction d : children_of(s, c)) {
    if (s.at(neighbor(c, d)).stress) {
      stressed_child = true;
      break;
    }
  }
  if (p.role == Role::Active) {
    p.stress = deficit || stressed_child;
    auto pc = s.parent_coord(c);
    if (!pc || !s.occupied(*pc)) throw EngineFault("active particle without live parent at " + to_string(c));
    const Particle& parent = s.at(*pc);
    if (parent.crashed)
      throw EngineFault("communicate read of crashed parent at " + to_string(*pc));
    p.inhibit = parent.inhibit;
  } else if (p.role == Role::Root) {
    p.inhibit = deficit || stressed_child;
  }
}

namespace {

// Children below capacity, in cursor-relative scan order.
std::optional<Direction> pick_share_child(SystemState& s, AxialCoord c,
                                          const EngineConfig& cfg) {
  Particle& p = s.at(c);
  std::vector<Direction> needy;
  for (int i = 0; i < 6; ++i) {
    Direction d = p.share_cursor.rotated(i);
    const Particle* nb = s.find(neighbor(c, d));
    if (nb && !nb->crashed && nb->parent && *nb->parent == opposite(d) &&
        s.kappa() - nb->e_bat > kEnergyTol) {
      needy.push_back(d);
    }
  }
  if (needy.empty()) return std::nullopt;
  switch (cfg.share_policy) {
    case EngineConfig::SharePolicy::RoundRobin: {
      Direction d = needy.front();
      p.share_cursor = d.rotated(1);
      return d;
    }
    case EngineConfig::SharePolicy::LowestBatteryFirst: {
      Direction best = needy.front();
      double best_e = s.at(neighbor(c, best)).e_bat;
      for (Direction d : needy) {
        double e = s.at(neighbor(c, d)).e_bat;
        if (e < best_e) {
          best = d;
          best_e = e;
        }
      }
      return best;
    }
    case EngineConfig::SharePolicy::SeededRandom: {
      SplitMix64 g(mix_seed(cfg.share_seed, 0x5A4E,
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)),
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.r)),
                            s.counters().transfers));
      return needy[g.below(static_cast<std::uint32_t>(needy.size()))];
    }
  }
  return std::nullopt;
}

}  // namespace

double share_energy(SystemState& s, AxialCoord c, const EngineConfig& cfg) {
  Particle& p = s.at(c);
  if (p.role == Role::Root && s.kappa() - p.e_bat > kEnergyTol) {
    double harvested = std::min(s.alpha(), s.kappa() - p.e_bat);
    p.e_bat += harvested;
    s.ledger().harvested += harvested;
  }
  if (p.e_bat < s.alpha()) return 0.0;
  auto d = pick_share_child(s, c, cfg);
  if (!d) return 0.0;
  Particle& child = s.at(neighbor(c, *d));
  double amount = std::min(s.alpha(), s.kappa() - child.e_bat);
  p.e_bat -= amount;
  child.e_bat += amount;
  ++s.counters().transfers;
  return amount;
}

ActionOutcome use_energy(SystemState& s, AxialCoord c, Behavior& behavior) {
  ActionOutcome out;
  auto action = behavior.enabled_action(s, c);
  if (!action) return out;
  double cost = action->cost ? *action->cost : s.next_demand(c);
  Particle& p = s.at(c);
  if (p.inhibit || p.e_bat < cost) return out;
  p.e_bat -= cost;
  s.ledger().spent += cost;
  if (!behavior.perform(s, c, *action)) {
    // Aborted action: the whole usage phase unwinds.
    Particle& q = s.at(c);
    q.e_bat += cost;
    s.ledger().spent -= cost;
    return out;
  }
  // The mover's record may live at a new coordinate now; demand_index was
  // captured into `cost` before the perform.
  Particle* q = s.find(c);
  if (!q) {
    AxialCoord moved_to = neighbor(c, action->dir);
    q = &s.at(moved_to);
  }
  q->demand_index += 1;
  ++s.counters().actions;
  out.performed = true;
  out.energy_spent = cost;
  out.action = *action;
  return out;
}

ActionOutcome activate_energy(SystemState& s, AxialCoord c, Behavior& behavior,
                              const EngineConfig& cfg) {
  Particle& p = s.at(c);
  if (p.crashed) throw EngineFault("activation of crashed particle at " + to_string(c));
  if (p.role == Role::Idle) {
    if (auto d = select_parent_round_robin(s, c)) {
      p.role = Role::Active;
      p.parent = *d;
      ++s.counters().rejoins;
    }
    return {};
  }
  if (cfg.communication_enabled) communicate(s, c, behavior);
  share_energy(s, c, cfg);
  return use_energy(s, c, behavior);
}

}  // namespace amoebot
