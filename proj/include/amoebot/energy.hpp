#pragma once

#include <optional>

#include "amoebot/behavior.hpp"
#include "amoebot/lattice.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

// Engine switches shared by the energy and repair handlers.
struct EngineConfig {
  bool communication_enabled = true;
  enum class SharePolicy { RoundRobin, LowestBatteryFirst, SeededRandom };
  SharePolicy share_policy = SharePolicy::RoundRobin;
  std::uint64_t share_seed = 1;  // only used by SeededRandom
};

struct ActionOutcome {
  bool performed = false;
  double energy_spent = 0.0;
  std::optional<ActionDescriptor> action;
};

// delta(P) the usage guard and the stress test actually see: the cost of the
// behavior's enabled action if it declares one (with override if present),
// the system demand stream otherwise; nullopt when the particle has no
// pending action at all, in which case it cannot be stressed.
std::optional<double> effective_demand(const SystemState& s, AxialCoord c,
                                       Behavior& behavior);

// Communication phase. Active: stress from own deficit or a stressed child,
// inhibit copied from the parent. Root: inhibit from own deficit or a
// stressed child; roots never raise a stress flag.
void communicate(SystemState& s, AxialCoord c, Behavior& behavior);

// Sharing phase. Roots first harvest min(alpha, kappa - e_bat); any non-idle
// particle with at least alpha stored passes min(alpha, kappa - child) to one
// child below capacity. Returns the transferred amount.
double share_energy(SystemState& s, AxialCoord c, const EngineConfig& cfg);

// Usage phase. Debits delta(P), bumps the demand index and invokes the
// behavior when an action is enabled, affordable, and the particle is not
// inhibited; a failed perform rolls the debit back.
ActionOutcome use_energy(SystemState& s, AxialCoord c, Behavior& behavior);

// One full activation: the idle branch joins the forest when possible,
// non-idle particles run the three phases in order.
ActionOutcome activate_energy(SystemState& s, AxialCoord c, Behavior& behavior,
                              const EngineConfig& cfg);

// Shared idle-join scan: first neighbor that is root or active without its
// prune flag, scanning rr_cursor, rr_cursor+1, ... mod 6; advances the
// cursor past the selection.
std::optional<Direction> select_parent_round_robin(SystemState& s,
                                                   AxialCoord c);

}  // namespace amoebot
