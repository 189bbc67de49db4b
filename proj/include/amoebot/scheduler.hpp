#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amoebot/behavior.hpp"
#include "amoebot/energy.hpp"
#include "amoebot/lattice.hpp"
#include "amoebot/repair.hpp"
#include "amoebot/system.hpp"

namespace amoebot {

struct ScheduleSpec {
  enum class Kind { RoundPermutation, WeightedRandom, Explicit };
  Kind kind = Kind::RoundPermutation;
  std::uint64_t seed = 1;
  std::vector<AxialCoord> explicit_sequence;
};

// Stateful activation source over one system. RoundPermutation reshuffles
// the live particles each round; WeightedRandom draws uniformly from the
// live set and closes a round once everyone has been seen; Explicit replays
// a recorded sequence.
class Scheduler {
public:
  explicit Scheduler(ScheduleSpec spec);

  // Next coordinate to activate; nullopt when an Explicit sequence is
  // exhausted. Never returns a crashed particle.
  std::optional<AxialCoord> next_activation(const SystemState& s);

  // True when the activation just returned completed an asynchronous round.
  bool at_round_boundary() const { return round_boundary_; }

  // Keeps coverage accounting attached to a particle that relocated.
  void notify_moved(AxialCoord from, AxialCoord to);

private:
  ScheduleSpec spec_;
  std::vector<AxialCoord> permutation_;
  std::size_t cursor_ = 0;
  std::uint64_t rounds_started_ = 0;
  std::set<AxialCoord> covered_;
  std::size_t explicit_cursor_ = 0;
  SplitMix64 pick_rng_;
  bool round_boundary_ = false;

  void refill_permutation(const SystemState& s);
  bool covers_all_live(const SystemState& s) const;
};

struct RoundStats {
  std::uint64_t round = 0;
  double total_energy = 0.0;
  int num_stressed = 0;
  int num_inhibited = 0;
  int num_idle = 0;
  std::uint64_t actions_performed = 0;  // this round
  std::uint64_t transfers = 0;          // this round
  double harvested = 0.0;               // this round
  std::uint64_t reproductions = 0;      // this round
  int num_crashed = 0;
  double harvested_cum = 0.0;
  double spent_cum = 0.0;
  int faulty_tree_population = 0;
};

struct StopCondition {
  enum class Kind { MaxRounds, AllMetDemand, ShapeComplete, TargetSize };
  Kind kind = Kind::MaxRounds;
  std::uint64_t max_rounds = 1000;  // cap for every kind
  std::size_t target_size = 0;

  static StopCondition max_rounds_only(std::uint64_t rounds) {
    return {Kind::MaxRounds, rounds, 0};
  }
};

struct CrashEvent {
  std::uint64_t round = 0;  // fires at the boundary entering this round
  AxialCoord coord;
};

struct CrashEventRecord {
  CrashEvent event;
  bool accepted = false;
  std::string reason;
};

struct RepairEvent {
  std::uint64_t round = 0;
  AxialCoord coord;
  RepairOutcome::Kind kind = RepairOutcome::Kind::NoChange;
  bool rejoined_faulty = false;  // chase-cycle indicator, observer-computed
};

struct TraceRow {
  std::uint64_t round = 0;
  AxialCoord coord;
  std::string event;
  double amount = 0.0;
};

struct RunConfig {
  EngineConfig engine;
  ScheduleSpec schedule;
  StopCondition stop;
  std::vector<CrashEvent> crash_script;
  bool record_repair_events = false;
  bool record_schedule = false;
  bool trace = false;
  // Observer hooks; both read-only views, invoked after each completed round
  // and after each performed action respectively.
  std::function<void(const SystemState&, const RoundStats&)> on_round;
  std::function<void(const SystemState&, AxialCoord, const ActionOutcome&,
                     double pre_e_bat, bool pre_inhibit)>
      on_action;
};

struct RunReport {
  std::vector<RoundStats> rounds;  // index == round number, row 0 is initial
  bool stop_satisfied = false;
  std::string stop_reason;
  std::optional<std::uint64_t> first_all_met_round;
  std::uint64_t max_starvation = 0;
  std::size_t final_population = 0;
  double satisfied_fraction = 0.0;  // live particles with >= 1 action done
  Ledger final_ledger;
  std::vector<CrashEventRecord> crash_events;
  std::vector<RepairEvent> repair_events;
  std::vector<AxialCoord> recorded_schedule;
  std::vector<TraceRow> trace;
};

// One integrated activation: Forest-Prune-Repair step, then the
// communicate/share/use phases when the repair step was a no-op and the
// particle is non-idle.
ActionOutcome activate_integrated(SystemState& s, AxialCoord c,
                                  Behavior& behavior, const EngineConfig& cfg,
                                  RepairOutcome* repair_out = nullptr);

// Drives the system round by round: scripted crashes at boundaries, stats
// and invariant checks after every round, stop-condition evaluation.
RunReport run(SystemState& s, Behavior& behavior, const RunConfig& cfg);

}  // namespace amoebot
