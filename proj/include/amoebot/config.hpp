#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amoebot/behavior.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

// Parsed run description. The on-disk format is a flat sectioned key=value
// file ([system] / [behavior] / [schedule] / [faults] / [output]); see the
// README for the full key list.
struct SimConfig {
  // [system]
  std::string shape = "hexagon";  // hexagon | line | parallelogram | explicit
  std::size_t size = 1;
  int width = 1;             // parallelogram rows
  AxialCoord origin{0, 0};   // hexagon center / line start / parallelogram corner
  std::vector<AxialCoord> shape_nodes;  // explicit
  std::string roots_spec = "center";    // center | auto:N | q,r;q,r;...
  double kappa = 10.0;
  double alpha = 1.0;
  std::string demand = "uniform";  // uniform | random_range
  double demand_value = 5.0;
  double demand_lo = 1.0;
  double demand_hi = 5.0;
  std::uint64_t demand_seed = 1;
  bool random_orientation = false;
  std::uint64_t orientation_seed = 1;

  // [behavior]
  std::string behavior = "demand_only";  // none | demand_only | hexagon | growth
  std::optional<double> behavior_delta;
  std::optional<AxialCoord> seed_coord;  // hexagon anchor, defaults to origin
  double move_cost = 5.0;
  double repro_cost = 5.0;
  std::size_t max_size = 1000;
  std::uint64_t behavior_seed = 1;

  // [schedule]
  std::string schedule = "round_permutation";  // | weighted_random
  std::uint64_t seed = 1;
  bool communication_disabled = false;
  std::string share_policy = "round_robin";  // | lowest_first | seeded_random

  // [faults]
  std::vector<CrashEvent> crash_script;

  // [output]
  std::string stop = "max_rounds";  // | all_met_demand | shape_complete | target_size
  std::uint64_t max_rounds = 1000;
  std::size_t target_size = 0;
  std::uint64_t frames_every = 0;
  bool trace = false;
};

SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& text, const std::string& origin_name);

// Materializes the configured shape and root set.
std::set<AxialCoord> config_shape(const SimConfig& cfg);
std::set<AxialCoord> config_roots(const SimConfig& cfg,
                                  const std::set<AxialCoord>& shape);

SystemState make_system(const SimConfig& cfg);
std::unique_ptr<Behavior> make_behavior(const SimConfig& cfg);
RunConfig make_run_config(const SimConfig& cfg);

AxialCoord parse_coord(const std::string& text);

}  // namespace amoebot
