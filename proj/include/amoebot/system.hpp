#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "amoebot/errors.hpp"
#include "amoebot/lattice.hpp"

namespace amoebot {

// Comparison tolerance for equality tests against kappa and zero. Demand
// guards (e_bat >= delta, e_bat < delta) deliberately use plain comparisons.
inline constexpr double kEnergyTol = 1e-9;

enum class Role { Idle, Active, Root };

const char* to_string(Role role);

// Per-agent state. Everything here is particle-local memory except
// `crashed`, which neighbors may read (the detection assumption), and
// `prune_count`, which is harness instrumentation.
struct Particle {
  Role role = Role::Idle;
  double e_bat = 0.0;
  std::optional<Direction> parent;
  bool stress = false;
  bool inhibit = false;
  bool prune = false;
  bool crashed = false;
  Direction rr_cursor{0};     // round-robin parent selection
  Direction share_cursor{0};  // round-robin child selection in sharing
  std::uint64_t demand_index = 0;
  int prune_count = 0;  // prune-branch executions since the last crash event
};

// Energy demand stream delta(P, i): the cost of particle P's i-th action.
struct UniformConstant {
  double value = 0.0;
};
struct PerParticleSequence {
  double default_value = 0.0;
  std::map<AxialCoord, std::vector<double>> sequences;  // cycled by index
};
struct SeededRandomRange {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t seed = 1;
};

struct DemandSpec {
  std::variant<UniformConstant, PerParticleSequence, SeededRandomRange> kind =
      UniformConstant{1.0};

  double evaluate(AxialCoord c, std::uint64_t index) const;
  // Largest value the stream can yield; used for instance validation.
  double max_value() const;
  double min_value() const;
};

// Cumulative energy bookkeeping for the conservation audit.
struct Ledger {
  double harvested = 0.0;
  double spent = 0.0;
  double crashed_energy = 0.0;  // stored in particles at their crash time
};

struct ActivityCounters {
  std::uint64_t actions = 0;
  std::uint64_t transfers = 0;
  std::uint64_t reproductions = 0;
  std::uint64_t prunes = 0;
  std::uint64_t rejoins = 0;
  std::uint64_t moves = 0;
};

// The mutable world: occupancy, parameters, crash set, counters. One
// SystemState is owned and mutated by exactly one sequential simulation.
class SystemState {
public:
  SystemState(std::map<AxialCoord, Particle> occupancy, double kappa,
              double alpha, DemandSpec demand);

  double kappa() const { return kappa_; }
  double alpha() const { return alpha_; }
  const DemandSpec& demand_spec() const { return demand_; }

  const std::map<AxialCoord, Particle>& occupancy() const { return occupancy_; }

  bool occupied(AxialCoord c) const { return occupancy_.count(c) > 0; }
  const Particle* find(AxialCoord c) const;
  Particle* find(AxialCoord c);
  const Particle& at(AxialCoord c) const;
  Particle& at(AxialCoord c);

  std::optional<AxialCoord> parent_coord(AxialCoord c) const;

  // delta(P) at the particle's current demand_index.
  double next_demand(AxialCoord c) const;

  std::size_t population() const { return occupancy_.size(); }
  std::size_t live_population() const;

  std::uint64_t round_counter = 0;

  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }
  ActivityCounters& counters() { return counters_; }
  const ActivityCounters& counters() const { return counters_; }

  // Mutations used by behaviors and the fault injector. Both keep the
  // occupancy map and counters consistent; callers enforce the model-level
  // preconditions (target empty, connectivity).
  void relocate(AxialCoord from, AxialCoord to);
  void spawn(AxialCoord c, Particle p);
  void mark_crashed(AxialCoord c);

  // Bumped by every occupancy mutation; lets observers cache per-layout
  // computations.
  std::uint64_t occupancy_version() const { return occupancy_version_; }

  // |total_energy - (harvested - spent - crashed_energy)| must stay within
  // `tol`; throws EngineFault otherwise.
  void check_conservation(double tol = 1e-6) const;

private:
  std::map<AxialCoord, Particle> occupancy_;
  double kappa_;
  double alpha_;
  DemandSpec demand_;
  Ledger ledger_;
  ActivityCounters counters_;
  std::uint64_t occupancy_version_ = 0;
};

// Valid-instance constructor: connected shape, at least one root inside it,
// positive kappa/alpha, demand bounded by kappa. Particles start per the
// canonical initialization (battery 0, flags false, parent null).
SystemState build_system(const std::set<AxialCoord>& shape,
                         const std::set<AxialCoord>& roots, double kappa,
                         double alpha, DemandSpec demand);

// Seeds every particle's cursors from (seed, coordinate); realizes the
// particles' private orientations as randomized scan-start labels.
void randomize_orientations(SystemState& s, std::uint64_t seed);

// Directions d such that the occupant of neighbor(c, d) is non-crashed and
// its parent points back at c.
std::vector<Direction> children_of(const SystemState& s, AxialCoord c);

// e_bat < delta(P) for the occupant's current demand index.
bool is_stressed(const SystemState& s, AxialCoord c);

// Sum of battery levels over non-crashed particles.
double total_energy(const SystemState& s);

// JSON-style snapshot: parameters plus per-particle records keyed by "q,r".
std::string snapshot_json(const SystemState& s);

}  // namespace amoebot
