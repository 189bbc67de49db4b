#pragma once

#include <map>
#include <set>
#include <string>

#include "amoebot/lattice.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

// Ground-truth forest view. Particles the algorithm itself cannot classify
// (it only sees flags and crash bits) are partitioned here by parent-pointer
// reachability for assertions and reporting. Read-only by contract.
struct ForestPartition {
  std::set<AxialCoord> root_reachable;  // trees anchored at a live root
  std::set<AxialCoord> faulty;          // trees cut off from every live root
  std::set<AxialCoord> idle;
};

// Throws EngineFault on a parent-pointer cycle.
ForestPartition classify_forest(const SystemState& s);

// Depth of each particle in its tree, roots at depth 1, following parent
// pointers. Particles in faulty trees measure from the tree's cut point.
std::map<AxialCoord, int> forest_depths(const SystemState& s);

// Largest number of consecutive rounds any particle spent stressed.
std::uint64_t max_starvation(const SystemState& s, const RunReport& report);

// Battery bounds, parent sanity, conservation, forest acyclicity. Throws
// EngineFault with a diagnostic on violation.
void check_invariants(const SystemState& s);

// Fixed column schema shared by golden-file tests; one row per round.
extern const char* const kRoundsCsvHeader;
std::string rounds_csv(const RunReport& report);

std::string trace_csv(const RunReport& report);

std::string summary_json(const SystemState& s, const RunReport& report,
                         std::uint64_t seed);

}  // namespace amoebot
