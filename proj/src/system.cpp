#include "amoebot/system.hpp"

#include <algorithm>
#include <cmath>

#include "amoebot/rng.hpp"
#include "nlohmann/json.hpp"

namespace amoebot {

const char* to_string(Role role) {
  switch (role) {
    case Role::Idle: return "idle";
    case Role::Active: return "active";
    case Role::Root: return "root";
  }
  return "?";
}

double DemandSpec::evaluate(AxialCoord c, std::uint64_t index) const {
  if (const auto* u = std::get_if<UniformConstant>(&kind)) return u->value;
  if (const auto* p = std::get_if<PerParticleSequence>(&kind)) {
    auto it = p->sequences.find(c);
    if (it == p->sequences.end() || it->second.empty()) return p->default_value;
    return it->second[index % it->second.size()];
  }
  const auto& r = std::get<SeededRandomRange>(kind);
  SplitMix64 g(mix_seed(r.seed, 0xDE3A,
                        static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)),
                        static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.r)),
                        index));
  return r.lo + g.unit() * (r.hi - r.lo);
}

double DemandSpec::max_value() const {
  if (const auto* u = std::get_if<UniformConstant>(&kind)) return u->value;
  if (const auto* p = std::get_if<PerParticleSequence>(&kind)) {
    double m = p->default_value;
    for (const auto& [c, vals] : p->sequences)
      for (double v : vals) m = std::max(m, v);
    return m;
  }
  return std::get<SeededRandomRange>(kind).hi;
}

double DemandSpec::min_value() const {
  if (const auto* u = std::get_if<UniformConstant>(&kind)) return u->value;
  if (const auto* p = std::get_if<PerParticleSequence>(&kind)) {
    double m = p->default_value;
    for (const auto& [c, vals] : p->sequences)
      for (double v : vals) m = std::min(m, v);
    return m;
  }
  return std::get<SeededRandomRange>(kind).lo;
}

SystemState::SystemState(std::map<AxialCoord, Particle> occupancy, double kappa,
                         double alpha, DemandSpec demand)
    : occupancy_(std::move(occupancy)),
      kappa_(kappa),
      alpha_(alpha),
      demand_(std::move(demand)) {}

const Particle* SystemState::find(AxialCoord c) const {
  auto it = occupancy_.find(c);
  return it == occupancy_.end() ? nullptr : &it->second;
}

Particle* SystemState::find(AxialCoord c) {
  auto it = occupancy_.find(c);
  return it == occupancy_.end() ? nullptr : &it->second;
}

const Particle& SystemState::at(AxialCoord c) const {
  const Particle* p = find(c);
  if (!p) throw EngineFault("no particle at " + to_string(c));
  return *p;
}

Particle& SystemState::at(AxialCoord c) {
  Particle* p = find(c);
  if (!p) throw EngineFault("no particle at " + to_string(c));
  return *p;
}

std::optional<AxialCoord> SystemState::parent_coord(AxialCoord c) const {
  const Particle& p = at(c);
  if (!p.parent) return std::nullopt;
  return neighbor(c, *p.parent);
}

double SystemState::next_demand(AxialCoord c) const {
  return demand_.evaluate(c, at(c).demand_index);
}

std::size_t SystemState::live_population() const {
  std::size_t n = 0;
  for (const auto& [c, p] : occupancy_)
    if (!p.crashed) ++n;
  return n;
}

void SystemState::relocate(AxialCoord from, AxialCoord to) {
  if (occupied(to)) throw EngineFault("relocate target occupied: " + to_string(to));
  auto it = occupancy_.find(from);
  if (it == occupancy_.end()) throw EngineFault("relocate source empty: " + to_string(from));
  Particle p = it->second;
  occupancy_.erase(it);
  occupancy_.emplace(to, p);
  ++counters_.moves;
  ++occupancy_version_;
}

void SystemState::spawn(AxialCoord c, Particle p) {
  if (occupied(c)) throw EngineFault("spawn target occupied: " + to_string(c));
  occupancy_.emplace(c, p);
  ++occupancy_version_;
}

void SystemState::mark_crashed(AxialCoord c) {
  Particle& p = at(c);
  if (p.crashed) throw EngineFault("double crash at " + to_string(c));
  p.crashed = true;
  ledger_.crashed_energy += p.e_bat;
  ++occupancy_version_;
}

void SystemState::check_conservation(double tol) const {
  double expected = ledger_.harvested - ledger_.spent - ledger_.crashed_energy;
  double actual = total_energy(*this);
  if (std::abs(actual - expected) > tol) {
    throw EngineFault("conservation violated: total=" + std::to_string(actual) +
                      " expected=" + std::to_string(expected));
  }
}

SystemState build_system(const std::set<AxialCoord>& shape,
                         const std::set<AxialCoord>& roots, double kappa,
                         double alpha, DemandSpec demand) {
  if (kappa <= 0.0)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "kappa must be positive");
  if (alpha <= 0.0)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "alpha must be positive");
  if (roots.empty())
    throw ValidationError(ValidationError::Kind::EmptyRoots,
                          "at least one root particle is required");
  for (AxialCoord r : roots) {
    if (!shape.count(r))
      throw ValidationError(ValidationError::Kind::RootOutsideShape,
                            "root " + to_string(r) + " is not in the shape");
  }
  if (!is_connected(shape))
    throw ValidationError(ValidationError::Kind::DisconnectedShape,
                          "particle shape is not connected");
  if (demand.max_value() > kappa)
    throw ValidationError(ValidationError::Kind::DemandExceedsCapacity,
                          "demand exceeds battery capacity kappa");
  if (demand.min_value() <= 0.0)
    throw ValidationError(ValidationError::Kind::NonPositiveParameter,
                          "demand values must be positive");

  std::map<AxialCoord, Particle> occ;
  for (AxialCoord c : shape) {
    Particle p;
    p.role = roots.count(c) ? Role::Root : Role::Idle;
    occ.emplace(c, p);
  }
  return SystemState(std::move(occ), kappa, alpha, std::move(demand));
}

void randomize_orientations(SystemState& s, std::uint64_t seed) {
  for (const auto& [c, unused] : s.occupancy()) {
    SplitMix64 g(mix_seed(seed, 0x0813,
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)),
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.r))));
    int rot = static_cast<int>(g.below(6));
    Particle& p = s.at(c);
    p.rr_cursor = Direction(rot);
    p.share_cursor = Direction(rot);
  }
}

std::vector<Direction> children_of(const SystemState& s, AxialCoord c) {
  std::vector<Direction> out;
  for (int d = 0; d < 6; ++d) {
    Direction dir(d);
    const Particle* nb = s.find(neighbor(c, dir));
    if (nb && !nb->crashed && nb->parent && *nb->parent == opposite(dir))
      out.push_back(dir);
  }
  return out;
}

bool is_stressed(const SystemState& s, AxialCoord c) {
  const Particle& p = s.at(c);
  return p.e_bat < s.next_demand(c);
}

double total_energy(const SystemState& s) {
  double sum = 0.0;
  for (const auto& [c, p] : s.occupancy())
    if (!p.crashed) sum += p.e_bat;
  return sum;
}

std::string snapshot_json(const SystemState& s) {
  nlohmann::ordered_json j;
  j["kappa"] = s.kappa();
  j["alpha"] = s.alpha();
  j["round"] = s.round_counter;
  j["population"] = s.population();
  nlohmann::ordered_json particles;
  for (const auto& [c, p] : s.occupancy()) {
    nlohmann::ordered_json rec;
    rec["role"] = to_string(p.role);
    rec["e_bat"] = p.e_bat;
    if (p.parent)
      rec["parent"] = p.parent->label();
    else
      rec["parent"] = nullptr;
    rec["stress"] = p.stress;
    rec["inhibit"] = p.inhibit;
    rec["prune"] = p.prune;
    rec["crashed"] = p.crashed;
    rec["demand_index"] = p.demand_index;
    particles[to_string(c)] = rec;
  }
  j["particles"] = particles;
  return j.dump(2);
}

}  // namespace amoebot
