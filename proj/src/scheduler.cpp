#include "amoebot/scheduler.hpp"

#include <algorithm>

#include "amoebot/metrics.hpp"
#include "amoebot/rng.hpp"

namespace amoebot {

Scheduler::Scheduler(ScheduleSpec spec)
    : spec_(std::move(spec)), pick_rng_(mix_seed(spec_.seed, 0xF41A)) {
  if (spec_.kind == ScheduleSpec::Kind::Explicit &&
      spec_.explicit_sequence.empty())
    throw ValidationError(ValidationError::Kind::BadSchedule,
                          "explicit schedule must not be empty");
}

void Scheduler::refill_permutation(const SystemState& s) {
  permutation_.clear();
  for (const auto& [c, p] : s.occupancy())
    if (!p.crashed) permutation_.push_back(c);
  SplitMix64 rng(mix_seed(spec_.seed, 0x90BD, rounds_started_));
  deterministic_shuffle(permutation_, rng);
  ++rounds_started_;
  cursor_ = 0;
}

bool Scheduler::covers_all_live(const SystemState& s) const {
  for (const auto& [c, p] : s.occupancy())
    if (!p.crashed && !covered_.count(c)) return false;
  return true;
}

void Scheduler::notify_moved(AxialCoord from, AxialCoord to) {
  if (covered_.erase(from)) covered_.insert(to);
}

std::optional<AxialCoord> Scheduler::next_activation(const SystemState& s) {
  round_boundary_ = false;
  switch (spec_.kind) {
    case ScheduleSpec::Kind::RoundPermutation: {
      while (true) {
        if (cursor_ >= permutation_.size()) refill_permutation(s);
        if (permutation_.empty())
          throw ValidationError(ValidationError::Kind::BadSchedule,
                                "no live particles to schedule");
        AxialCoord c = permutation_[cursor_++];
        const Particle* p = s.find(c);
        if (!p || p->crashed) continue;  // crashed or moved mid-round
        // Skip the rest of the permutation past crashed particles so the
        // round closes once every live particle has been seen.
        while (cursor_ < permutation_.size()) {
          const Particle* q = s.find(permutation_[cursor_]);
          if (q && !q->crashed) break;
          ++cursor_;
        }
        round_boundary_ = cursor_ >= permutation_.size();
        return c;
      }
    }
    case ScheduleSpec::Kind::WeightedRandom: {
      std::vector<AxialCoord> live;
      for (const auto& [c, p] : s.occupancy())
        if (!p.crashed) live.push_back(c);
      if (live.empty())
        throw ValidationError(ValidationError::Kind::BadSchedule,
                              "no live particles to schedule");
      AxialCoord c = live[pick_rng_.below(static_cast<std::uint32_t>(live.size()))];
      covered_.insert(c);
      if (covers_all_live(s)) {
        covered_.clear();
        round_boundary_ = true;
      }
      return c;
    }
    case ScheduleSpec::Kind::Explicit: {
      if (explicit_cursor_ >= spec_.explicit_sequence.size())
        return std::nullopt;
      AxialCoord c = spec_.explicit_sequence[explicit_cursor_++];
      const Particle* p = s.find(c);
      if (!p || p->crashed)
        throw ValidationError(ValidationError::Kind::BadSchedule,
                              "explicit schedule names a missing or crashed "
                              "particle at " + to_string(c));
      covered_.insert(c);
      if (covers_all_live(s)) {
        covered_.clear();
        round_boundary_ = true;
      }
      return c;
    }
  }
  return std::nullopt;
}

ActionOutcome activate_integrated(SystemState& s, AxialCoord c,
                                  Behavior& behavior, const EngineConfig& cfg,
                                  RepairOutcome* repair_out) {
  const Particle& p = s.at(c);
  if (p.crashed) throw EngineFault("activation of crashed particle at " + to_string(c));
  RepairOutcome r = activate_repair(s, c);
  if (repair_out) *repair_out = r;
  if (r.kind != RepairOutcome::Kind::NoChange) return {};
  if (s.at(c).role == Role::Idle) return {};
  if (cfg.communication_enabled) communicate(s, c, behavior);
  share_energy(s, c, cfg);
  return use_energy(s, c, behavior);
}

namespace {

struct StarvationTracker {
  std::map<AxialCoord, std::uint64_t> streak;
  std::uint64_t max_seen = 0;

  void update(const SystemState& s, Behavior& behavior) {
    std::map<AxialCoord, std::uint64_t> next;
    for (const auto& [c, p] : s.occupancy()) {
      if (p.crashed) continue;
      auto demand = effective_demand(s, c, behavior);
      bool starving = demand && p.e_bat < *demand;
      if (!starving) continue;
      auto it = streak.find(c);
      std::uint64_t n = (it == streak.end() ? 0 : it->second) + 1;
      next[c] = n;
      max_seen = std::max(max_seen, n);
    }
    streak = std::move(next);
  }
};

bool all_met_demand(const SystemState& s) {
  for (const auto& [c, p] : s.occupancy())
    if (!p.crashed && p.demand_index == 0) return false;
  return true;
}

RoundStats collect_stats(const SystemState& s, const ActivityCounters& prev,
                         double prev_harvested) {
  RoundStats r;
  r.round = s.round_counter;
  r.total_energy = total_energy(s);
  for (const auto& [c, p] : s.occupancy()) {
    if (p.crashed) {
      ++r.num_crashed;
      continue;
    }
    if (p.stress) ++r.num_stressed;
    if (p.inhibit) ++r.num_inhibited;
    if (p.role == Role::Idle) ++r.num_idle;
  }
  const ActivityCounters& now = s.counters();
  r.actions_performed = now.actions - prev.actions;
  r.transfers = now.transfers - prev.transfers;
  r.reproductions = now.reproductions - prev.reproductions;
  r.harvested = s.ledger().harvested - prev_harvested;
  r.harvested_cum = s.ledger().harvested;
  r.spent_cum = s.ledger().spent;
  r.faulty_tree_population =
      static_cast<int>(classify_forest(s).faulty.size());
  return r;
}

}  // namespace

RunReport run(SystemState& s, Behavior& behavior, const RunConfig& cfg) {
  RunReport report;
  Scheduler scheduler(cfg.schedule);
  StarvationTracker starvation;

  auto crash_script = cfg.crash_script;
  std::stable_sort(crash_script.begin(), crash_script.end(),
                   [](const CrashEvent& a, const CrashEvent& b) {
                     return a.round < b.round;
                   });
  std::size_t next_crash = 0;

  ActivityCounters prev_counters = s.counters();
  double prev_harvested = s.ledger().harvested;
  report.rounds.push_back(collect_stats(s, prev_counters, prev_harvested));
  if (all_met_demand(s)) report.first_all_met_round = s.round_counter;

  auto stop_hit = [&]() -> std::optional<std::string> {
    switch (cfg.stop.kind) {
      case StopCondition::Kind::MaxRounds:
        if (s.round_counter >= cfg.stop.max_rounds) return "max_rounds";
        return std::nullopt;
      case StopCondition::Kind::AllMetDemand:
        if (report.first_all_met_round) return "all_met_demand";
        return std::nullopt;
      case StopCondition::Kind::ShapeComplete:
        if (behavior.complete(s)) return "shape_complete";
        return std::nullopt;
      case StopCondition::Kind::TargetSize:
        if (s.population() >= cfg.stop.target_size) return "target_size";
        return std::nullopt;
    }
    return std::nullopt;
  };

  bool ended_by_schedule = false;
  while (true) {
    if (auto reason = stop_hit()) {
      report.stop_satisfied = true;
      report.stop_reason = *reason;
      break;
    }
    if (cfg.stop.kind != StopCondition::Kind::MaxRounds &&
        s.round_counter >= cfg.stop.max_rounds) {
      report.stop_satisfied = false;
      report.stop_reason = "round_cap";
      break;
    }

    std::uint64_t entering_round = s.round_counter + 1;
    while (next_crash < crash_script.size() &&
           crash_script[next_crash].round <= entering_round) {
      const CrashEvent& ev = crash_script[next_crash++];
      CrashEventRecord rec;
      rec.event = ev;
      if (!s.occupied(ev.coord) || s.at(ev.coord).crashed) {
        rec.accepted = false;
        rec.reason = "no live particle at " + to_string(ev.coord);
      } else {
        rec.accepted = inject_crash(s, ev.coord, &rec.reason);
      }
      report.crash_events.push_back(rec);
    }

    // One asynchronous round.
    while (true) {
      auto c = scheduler.next_activation(s);
      if (!c) {
        ended_by_schedule = true;
        break;
      }
      if (cfg.record_schedule) report.recorded_schedule.push_back(*c);
      double pre_e = s.at(*c).e_bat;
      bool pre_inhibit = s.at(*c).inhibit;
      RepairOutcome repair;
      ActionOutcome outcome = activate_integrated(s, *c, behavior, cfg.engine, &repair);
      if (cfg.record_repair_events &&
          repair.kind != RepairOutcome::Kind::NoChange) {
        RepairEvent ev;
        ev.round = entering_round;
        ev.coord = *c;
        ev.kind = repair.kind;
        if (repair.kind == RepairOutcome::Kind::Rejoined) {
          auto partition = classify_forest(s);
          ev.rejoined_faulty = partition.faulty.count(*c) > 0;
        }
        report.repair_events.push_back(ev);
      }
      if (cfg.trace) {
        TraceRow row;
        row.round = entering_round;
        row.coord = *c;
        if (repair.kind == RepairOutcome::Kind::Pruned)
          row.event = "pruned";
        else if (repair.kind == RepairOutcome::Kind::Rejoined)
          row.event = "rejoined";
        else if (outcome.performed)
          row.event = std::string("action_") + to_string(outcome.action->kind);
        else
          row.event = "step";
        row.amount = outcome.energy_spent;
        report.trace.push_back(row);
      }
      if (outcome.performed && cfg.on_action)
        cfg.on_action(s, *c, outcome, pre_e, pre_inhibit);
      if (outcome.performed && outcome.action &&
          outcome.action->kind == ActionDescriptor::Kind::Move)
        scheduler.notify_moved(*c, neighbor(*c, outcome.action->dir));
      if (scheduler.at_round_boundary()) break;
    }
    if (ended_by_schedule) {
      report.stop_satisfied = false;
      report.stop_reason = "schedule_exhausted";
      break;
    }

    s.round_counter = entering_round;
    starvation.update(s, behavior);
    report.max_starvation = starvation.max_seen;
    if (!report.first_all_met_round && all_met_demand(s))
      report.first_all_met_round = entering_round;

    report.rounds.push_back(collect_stats(s, prev_counters, prev_harvested));
    prev_counters = s.counters();
    prev_harvested = s.ledger().harvested;

    check_invariants(s);
    if (cfg.on_round) cfg.on_round(s, report.rounds.back());
  }

  report.final_population = s.population();
  report.final_ledger = s.ledger();
  std::size_t live = 0, satisfied = 0;
  for (const auto& [c, p] : s.occupancy()) {
    if (p.crashed) continue;
    ++live;
    if (p.demand_index > 0) ++satisfied;
  }
  report.satisfied_fraction = live ? static_cast<double>(satisfied) / live : 0.0;
  return report;
}

}  // namespace amoebot
