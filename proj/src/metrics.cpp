#include "amoebot/metrics.hpp"

#include <charconv>
#include <cmath>

#include "nlohmann/json.hpp"

namespace amoebot {

namespace {

enum class Mark : unsigned char { Unknown, InProgress, Reachable, Faulty };

// Walks the parent chain from c, memoizing the classification of every
// particle on the way.
Mark classify_chain(const SystemState& s, AxialCoord c,
                    std::map<AxialCoord, Mark>& marks) {
  std::vector<AxialCoord> path;
  AxialCoord cur = c;
  Mark result = Mark::Faulty;
  while (true) {
    auto it = marks.find(cur);
    if (it != marks.end()) {
      if (it->second == Mark::InProgress)
        throw EngineFault("parent-pointer cycle through " + to_string(cur));
      result = it->second;
      break;
    }
    const Particle& p = s.at(cur);
    if (p.role == Role::Root) {
      marks[cur] = Mark::Reachable;
      result = Mark::Reachable;
      break;
    }
    if (p.role == Role::Idle || !p.parent) {
      // Chains ending in an idle particle are cut off from every root;
      // the idle particle itself is reported separately.
      marks[cur] = Mark::Faulty;
      result = Mark::Faulty;
      break;
    }
    marks[cur] = Mark::InProgress;
    path.push_back(cur);
    AxialCoord next = neighbor(cur, *p.parent);
    const Particle* parent = s.find(next);
    if (!parent || parent->crashed) {
      result = Mark::Faulty;  // cur heads a faulty tree
      break;
    }
    cur = next;
  }
  for (AxialCoord coord : path) marks[coord] = result;
  return result;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  return std::string(buf, ptr);
}

}  // namespace

ForestPartition classify_forest(const SystemState& s) {
  ForestPartition out;
  std::map<AxialCoord, Mark> marks;
  for (const auto& [c, p] : s.occupancy()) {
    if (p.crashed) continue;
    if (p.role == Role::Idle) {
      out.idle.insert(c);
      continue;
    }
    Mark m = (p.role == Role::Root) ? Mark::Reachable
                                    : classify_chain(s, c, marks);
    if (m == Mark::Reachable)
      out.root_reachable.insert(c);
    else
      out.faulty.insert(c);
  }
  return out;
}

std::map<AxialCoord, int> forest_depths(const SystemState& s) {
  std::map<AxialCoord, int> depth;
  // Iterate to a fixed point; parent chains are acyclic so this settles in
  // at most max-depth passes over a tiny map.
  bool changed = true;
  for (const auto& [c, p] : s.occupancy()) {
    if (p.crashed || p.role == Role::Idle) continue;
    if (p.role == Role::Root) {
      depth[c] = 1;
      continue;
    }
    auto pc = s.parent_coord(c);
    const Particle* parent = pc ? s.find(*pc) : nullptr;
    if (!parent || parent->crashed || parent->role == Role::Idle) depth[c] = 1;
  }
  while (changed) {
    changed = false;
    for (const auto& [c, p] : s.occupancy()) {
      if (p.crashed || p.role == Role::Idle || depth.count(c)) continue;
      auto pc = s.parent_coord(c);
      if (pc && depth.count(*pc)) {
        depth[c] = depth[*pc] + 1;
        changed = true;
      }
    }
  }
  return depth;
}

std::uint64_t max_starvation(const SystemState&, const RunReport& report) {
  return report.max_starvation;
}

void check_invariants(const SystemState& s) {
  for (const auto& [c, p] : s.occupancy()) {
    if (p.crashed) continue;
    if (p.e_bat < -kEnergyTol || p.e_bat > s.kappa() + kEnergyTol)
      throw EngineFault("battery out of bounds at " + to_string(c) + ": " +
                        std::to_string(p.e_bat));
    if (p.role == Role::Idle && p.parent)
      throw EngineFault("idle particle with parent at " + to_string(c));
    if (p.role == Role::Active && !p.parent)
      throw EngineFault("active particle without parent at " + to_string(c));
    if (p.role == Role::Root && p.parent)
      throw EngineFault("root with parent at " + to_string(c));
  }
  s.check_conservation();
  classify_forest(s);  // throws on parent cycles
}

const char* const kRoundsCsvHeader =
    "round,total_energy,num_stressed,num_inhibited,num_idle,"
    "actions_performed,transfers,harvested,reproductions,num_crashed,"
    "harvested_cum,spent_cum,faulty_tree_population";

std::string rounds_csv(const RunReport& report) {
  std::string out = kRoundsCsvHeader;
  out += '\n';
  for (const RoundStats& r : report.rounds) {
    out += std::to_string(r.round);
    out += ',';
    out += format_double(r.total_energy);
    out += ',';
    out += std::to_string(r.num_stressed);
    out += ',';
    out += std::to_string(r.num_inhibited);
    out += ',';
    out += std::to_string(r.num_idle);
    out += ',';
    out += std::to_string(r.actions_performed);
    out += ',';
    out += std::to_string(r.transfers);
    out += ',';
    out += format_double(r.harvested);
    out += ',';
    out += std::to_string(r.reproductions);
    out += ',';
    out += std::to_string(r.num_crashed);
    out += ',';
    out += format_double(r.harvested_cum);
    out += ',';
    out += format_double(r.spent_cum);
    out += ',';
    out += std::to_string(r.faulty_tree_population);
    out += '\n';
  }
  return out;
}

std::string trace_csv(const RunReport& report) {
  std::string out = "round,q,r,event,amount\n";
  for (const TraceRow& row : report.trace) {
    out += std::to_string(row.round);
    out += ',';
    out += std::to_string(row.coord.q);
    out += ',';
    out += std::to_string(row.coord.r);
    out += ',';
    out += row.event;
    out += ',';
    out += format_double(row.amount);
    out += '\n';
  }
  return out;
}

std::string summary_json(const SystemState& s, const RunReport& report,
                         std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["rounds_executed"] = report.rounds.empty() ? 0 : report.rounds.back().round;
  j["stop_satisfied"] = report.stop_satisfied;
  j["stop_reason"] = report.stop_reason;
  if (report.first_all_met_round)
    j["first_all_met_round"] = *report.first_all_met_round;
  else
    j["first_all_met_round"] = nullptr;
  j["max_starvation"] = report.max_starvation;
  j["satisfied_fraction"] = report.satisfied_fraction;
  j["final_population"] = report.final_population;
  j["total_energy"] = total_energy(s);
  j["harvested"] = report.final_ledger.harvested;
  j["spent"] = report.final_ledger.spent;
  j["crashed_energy"] = report.final_ledger.crashed_energy;
  nlohmann::ordered_json crashes = nlohmann::ordered_json::array();
  for (const CrashEventRecord& rec : report.crash_events) {
    nlohmann::ordered_json e;
    e["round"] = rec.event.round;
    e["coord"] = to_string(rec.event.coord);
    e["accepted"] = rec.accepted;
    if (!rec.accepted) e["reason"] = rec.reason;
    crashes.push_back(e);
  }
  j["crash_events"] = crashes;
  return j.dump(2);
}

}  // namespace amoebot
