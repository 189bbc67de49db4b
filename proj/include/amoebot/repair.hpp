#pragma once

#include <optional>
#include <string>

#include "amoebot/lattice.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

struct RepairOutcome {
  enum class Kind { NoChange, Pruned, Rejoined };
  Kind kind = Kind::NoChange;
  std::optional<Direction> joined_via;
};

// One Forest-Prune-Repair step. Prune branch: broadcast prune to the
// children, clear memory, go idle. Rejoin branch: idle particles adopt the
// next eligible neighbor round-robin. A missing parent node (vacated by a
// mover) triggers the prune branch the same way a crashed parent does.
RepairOutcome activate_repair(SystemState& s, AxialCoord c);

// Crash injection under the detection/connectivity/root-reliability
// assumptions. Returns false (and leaves the system untouched) when the
// crash would disconnect the live subgraph or remove the last live root;
// `why` then names the violated assumption.
bool inject_crash(SystemState& s, AxialCoord c, std::string* why = nullptr);

// Movement-composition hook: the mover broadcasts prune to its children and,
// unless it is a root, dissolves itself to idle. Called by movement actions
// before relocating.
void prune_on_move(SystemState& s, AxialCoord c);

// Prune-branch executions of this particle since the last crash event.
int prune_count(const SystemState& s, AxialCoord c);

}  // namespace amoebot
