#include "amoebot/repair.hpp"

#include "amoebot/energy.hpp"

namespace amoebot {

namespace {

void broadcast_prune(SystemState& s, AxialCoord c) {
  for (Direction d : children_of(s, c)) s.at(neighbor(c, d)).prune = true;
}

void dissolve_to_idle(Particle& p) {
  p.parent.reset();
  p.prune = false;
  p.stress = false;
  p.inhibit = false;
  p.role = Role::Idle;
}

}  // namespace

RepairOutcome activate_repair(SystemState& s, AxialCoord c) {
  Particle& p = s.at(c);
  if (p.crashed) throw EngineFault("repair activation of crashed particle at " + to_string(c));

  bool parent_gone = false;
  if (p.parent) {
    const Particle* parent = s.find(neighbor(c, *p.parent));
    parent_gone = (parent == nullptr) || parent->crashed;
  }
  if (p.prune || parent_gone) {
    if (p.role == Role::Root) throw EngineFault("root entered prune branch at " + to_string(c));
    broadcast_prune(s, c);
    dissolve_to_idle(p);
    p.prune_count += 1;
    ++s.counters().prunes;
    return {RepairOutcome::Kind::Pruned, std::nullopt};
  }
  if (p.role == Role::Idle) {
    if (auto d = select_parent_round_robin(s, c)) {
      p.role = Role::Active;
      p.parent = *d;
      ++s.counters().rejoins;
      return {RepairOutcome::Kind::Rejoined, *d};
    }
  }
  return {RepairOutcome::Kind::NoChange, std::nullopt};
}

bool inject_crash(SystemState& s, AxialCoord c, std::string* why) {
  const Particle& victim = s.at(c);
  if (victim.crashed) throw EngineFault("crash of already-crashed particle at " + to_string(c));

  std::set<AxialCoord> live;
  bool live_root = false;
  for (const auto& [coord, p] : s.occupancy()) {
    if (p.crashed || coord == c) continue;
    live.insert(coord);
    if (p.role == Role::Root) live_root = true;
  }
  if (!live_root) {
    if (why) *why = "root-reliability: no non-crashed root would remain";
    return false;
  }
  if (!is_connected(live)) {
    if (why) *why = "connectivity: non-crashed particles would disconnect";
    return false;
  }
  s.mark_crashed(c);
  // A new crash event starts a fresh prune-count window everywhere.
  for (const auto& [coord, unused] : s.occupancy()) s.at(coord).prune_count = 0;
  return true;
}

void prune_on_move(SystemState& s, AxialCoord c) {
  Particle& p = s.at(c);
  broadcast_prune(s, c);
  if (p.role != Role::Root) dissolve_to_idle(p);
}

int prune_count(const SystemState& s, AxialCoord c) {
  return s.at(c).prune_count;
}

}  // namespace amoebot
