#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "amoebot/lattice.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

// What the usage phase is being asked to pay for.
struct ActionDescriptor {
  enum class Kind { NoopSpend, Move, Reproduce };
  Kind kind = Kind::NoopSpend;
  Direction dir{0};            // target direction for Move/Reproduce
  std::optional<double> cost;  // per-action demand override
};

const char* to_string(ActionDescriptor::Kind kind);

// Action supplier consumed by the usage phase. `enabled_action` is consulted
// during each activation of a non-idle particle; `perform` runs only after
// the energy debit and must return false to abort (the debit is then rolled
// back). Implementations may keep internal bookkeeping but must not retain
// references into the system across activations.
class Behavior {
public:
  virtual ~Behavior() = default;

  virtual std::optional<ActionDescriptor> enabled_action(const SystemState& s,
                                                         AxialCoord c) = 0;
  virtual bool perform(SystemState& s, AxialCoord c,
                       const ActionDescriptor& action) = 0;

  // Behavior-level termination, e.g. all shape slots filled.
  virtual bool complete(const SystemState& s) const { return false; }
};

// No actions ever; pure harvest/share dynamics.
class NullBehavior final : public Behavior {
public:
  std::optional<ActionDescriptor> enabled_action(const SystemState&,
                                                 AxialCoord) override {
    return std::nullopt;
  }
  bool perform(SystemState&, AxialCoord, const ActionDescriptor&) override {
    return true;
  }
};

// Every particle always has a NoopSpend action. With `delta` set the action
// costs that amount; otherwise the cost comes from the system demand stream.
std::unique_ptr<Behavior> demand_only_behavior(
    std::optional<double> delta = std::nullopt);

// Simplified spiral-fill shape formation: unsettled particles walk the
// structure boundary toward the next unfilled slot of the hexagon spiral
// anchored at `seed_coord`; each step is a Move action costing `move_cost`
// that dissolves the mover's subtree via the prune broadcast.
std::unique_ptr<Behavior> hexagon_formation_behavior(AxialCoord seed_coord,
                                                     double move_cost);

// Growth by splitting: a particle with an unoccupied neighbor may spawn a
// new particle there for `repro_cost`, until the population reaches
// `max_size`. Newborns start empty and join the reproducer's tree.
std::unique_ptr<Behavior> reproduction_behavior(double repro_cost,
                                                std::size_t max_size,
                                                std::uint64_t seed);

}  // namespace amoebot
