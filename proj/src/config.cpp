#include "amoebot/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amoebot/shapes.hpp"

namespace amoebot {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& origin, int line,
                      const std::string& msg) {
  throw ValidationError(ValidationError::Kind::BadConfig,
                        origin + ":" + std::to_string(line) + ": " + msg);
}

bool parse_bool(const std::string& v, const std::string& origin, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(origin, line, "expected boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& origin, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    bad(origin, line, "expected number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& origin,
                        int line) {
  try {
    std::size_t pos = 0;
    std::uint64_t n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    bad(origin, line, "expected unsigned integer, got '" + v + "'");
  }
}

}  // namespace

AxialCoord parse_coord(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "expected coordinate 'q,r', got '" + text + "'");
  try {
    return {std::stoi(trim(text.substr(0, comma))),
            std::stoi(trim(text.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "expected coordinate 'q,r', got '" + text + "'");
  }
}

SimConfig parse_config(const std::string& text, const std::string& origin) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool saw_roots = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(origin, line, "unterminated section header");
      section = s.substr(1, s.size() - 2);
      if (section != "system" && section != "behavior" &&
          section != "schedule" && section != "faults" && section != "output")
        bad(origin, line, "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) bad(origin, line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (section.empty()) bad(origin, line, "key outside any section");

    if (section == "system") {
      if (key == "shape") cfg.shape = value;
      else if (key == "size") cfg.size = parse_u64(value, origin, line);
      else if (key == "width") cfg.width = static_cast<int>(parse_u64(value, origin, line));
      else if (key == "origin") cfg.origin = parse_coord(value);
      else if (key == "nodes") {
        std::istringstream ns(value);
        std::string tok;
        while (std::getline(ns, tok, ';'))
          cfg.shape_nodes.push_back(parse_coord(trim(tok)));
      }
      else if (key == "roots") { cfg.roots_spec = value; saw_roots = true; }
      else if (key == "kappa") cfg.kappa = parse_double(value, origin, line);
      else if (key == "alpha") cfg.alpha = parse_double(value, origin, line);
      else if (key == "demand") cfg.demand = value;
      else if (key == "demand_value") cfg.demand_value = parse_double(value, origin, line);
      else if (key == "demand_lo") cfg.demand_lo = parse_double(value, origin, line);
      else if (key == "demand_hi") cfg.demand_hi = parse_double(value, origin, line);
      else if (key == "demand_seed") cfg.demand_seed = parse_u64(value, origin, line);
      else if (key == "random_orientation") cfg.random_orientation = parse_bool(value, origin, line);
      else if (key == "orientation_seed") cfg.orientation_seed = parse_u64(value, origin, line);
      else bad(origin, line, "unknown key '" + key + "' in [system]");
    } else if (section == "behavior") {
      if (key == "kind") cfg.behavior = value;
      else if (key == "delta") cfg.behavior_delta = parse_double(value, origin, line);
      else if (key == "seed_coord") cfg.seed_coord = parse_coord(value);
      else if (key == "move_cost") cfg.move_cost = parse_double(value, origin, line);
      else if (key == "repro_cost") cfg.repro_cost = parse_double(value, origin, line);
      else if (key == "max_size") cfg.max_size = parse_u64(value, origin, line);
      else if (key == "seed") cfg.behavior_seed = parse_u64(value, origin, line);
      else bad(origin, line, "unknown key '" + key + "' in [behavior]");
    } else if (section == "schedule") {
      if (key == "kind") cfg.schedule = value;
      else if (key == "seed") cfg.seed = parse_u64(value, origin, line);
      else if (key == "communication_disabled") cfg.communication_disabled = parse_bool(value, origin, line);
      else if (key == "share_policy") cfg.share_policy = value;
      else bad(origin, line, "unknown key '" + key + "' in [schedule]");
    } else if (section == "faults") {
      if (key == "crash") {
        std::size_t sp = value.find(' ');
        if (sp == std::string::npos)
          bad(origin, line, "crash expects 'round q,r'");
        CrashEvent ev;
        ev.round = parse_u64(trim(value.substr(0, sp)), origin, line);
        ev.coord = parse_coord(trim(value.substr(sp + 1)));
        cfg.crash_script.push_back(ev);
      }
      else bad(origin, line, "unknown key '" + key + "' in [faults]");
    } else {  // output
      if (key == "stop") cfg.stop = value;
      else if (key == "max_rounds") cfg.max_rounds = parse_u64(value, origin, line);
      else if (key == "target_size") cfg.target_size = parse_u64(value, origin, line);
      else if (key == "frames_every") cfg.frames_every = parse_u64(value, origin, line);
      else if (key == "trace") cfg.trace = parse_bool(value, origin, line);
      else bad(origin, line, "unknown key '" + key + "' in [output]");
    }
  }

  if (!saw_roots)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          origin + ": missing required key 'roots' in [system]");

  auto one_of = [&](const std::string& key, const std::string& v,
                    std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
      if (v == a) return;
    std::string msg = origin + ": invalid " + key + " '" + v + "'";
    throw ValidationError(ValidationError::Kind::BadConfig, msg);
  };
  one_of("shape", cfg.shape, {"hexagon", "line", "parallelogram", "explicit"});
  one_of("demand", cfg.demand, {"uniform", "random_range"});
  one_of("behavior", cfg.behavior, {"none", "demand_only", "hexagon", "growth"});
  one_of("schedule", cfg.schedule, {"round_permutation", "weighted_random"});
  one_of("share_policy", cfg.share_policy,
         {"round_robin", "lowest_first", "seeded_random"});
  one_of("stop", cfg.stop,
         {"max_rounds", "all_met_demand", "shape_complete", "target_size"});
  if (cfg.behavior == "hexagon") {
    double biggest = std::max(cfg.move_cost, 0.0);
    if (biggest > cfg.kappa)
      throw ValidationError(
          ValidationError::Kind::DemandExceedsCapacity,
          origin + ": move_cost exceeds kappa; the most energy-intensive "
                   "action must fit in one battery");
  }
  if (cfg.behavior == "growth" && cfg.repro_cost > cfg.kappa)
    throw ValidationError(
        ValidationError::Kind::DemandExceedsCapacity,
        origin + ": repro_cost exceeds kappa; the most energy-intensive "
                 "action must fit in one battery");
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::set<AxialCoord> config_shape(const SimConfig& cfg) {
  if (cfg.shape == "hexagon") {
    auto spiral = shapes::spiral_order(cfg.origin, cfg.size);
    return {spiral.begin(), spiral.end()};
  }
  if (cfg.shape == "line") return shapes::line(cfg.origin, cfg.size);
  if (cfg.shape == "parallelogram")
    return shapes::parallelogram(cfg.origin, cfg.width, cfg.size);
  return {cfg.shape_nodes.begin(), cfg.shape_nodes.end()};
}

std::set<AxialCoord> config_roots(const SimConfig& cfg,
                                  const std::set<AxialCoord>& shape) {
  if (shape.empty())
    throw ValidationError(ValidationError::Kind::BadConfig, "empty shape");
  if (cfg.roots_spec == "center") {
    // Node closest to the shape centroid.
    double cq = 0, cr = 0;
    for (AxialCoord c : shape) {
      cq += c.q;
      cr += c.r;
    }
    cq /= static_cast<double>(shape.size());
    cr /= static_cast<double>(shape.size());
    AxialCoord best = *shape.begin();
    double best_d = 1e18;
    for (AxialCoord c : shape) {
      double dq = c.q - cq, dr = c.r - cr;
      double d = dq * dq + dr * dr + (dq + dr) * (dq + dr);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return {best};
  }
  if (cfg.roots_spec.rfind("auto:", 0) == 0) {
    std::size_t n = std::stoull(cfg.roots_spec.substr(5));
    if (n == 0 || n > shape.size())
      throw ValidationError(ValidationError::Kind::EmptyRoots,
                            "auto root count out of range");
    std::vector<AxialCoord> nodes(shape.begin(), shape.end());
    std::set<AxialCoord> roots;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = (n == 1) ? nodes.size() / 2
                                 : i * (nodes.size() - 1) / (n - 1);
      roots.insert(nodes[idx]);
    }
    return roots;
  }
  std::set<AxialCoord> roots;
  std::istringstream rs(cfg.roots_spec);
  std::string tok;
  while (std::getline(rs, tok, ';')) roots.insert(parse_coord(trim(tok)));
  return roots;
}

SystemState make_system(const SimConfig& cfg) {
  DemandSpec demand;
  if (cfg.demand == "uniform")
    demand.kind = UniformConstant{cfg.demand_value};
  else
    demand.kind = SeededRandomRange{cfg.demand_lo, cfg.demand_hi, cfg.demand_seed};
  auto shape = config_shape(cfg);
  auto roots = config_roots(cfg, shape);
  SystemState s = build_system(shape, roots, cfg.kappa, cfg.alpha, demand);
  if (cfg.random_orientation) randomize_orientations(s, cfg.orientation_seed);
  return s;
}

std::unique_ptr<Behavior> make_behavior(const SimConfig& cfg) {
  if (cfg.behavior == "none") return std::make_unique<NullBehavior>();
  if (cfg.behavior == "demand_only")
    return demand_only_behavior(cfg.behavior_delta);
  if (cfg.behavior == "hexagon") {
    AxialCoord seed = cfg.seed_coord.value_or(cfg.origin);
    auto shape = config_shape(cfg);
    if (!shape.count(seed))
      throw ValidationError(ValidationError::Kind::BadConfig,
                            "hexagon seed_coord must lie inside the initial shape");
    return hexagon_formation_behavior(seed, cfg.move_cost);
  }
  return reproduction_behavior(cfg.repro_cost, cfg.max_size, cfg.behavior_seed);
}

RunConfig make_run_config(const SimConfig& cfg) {
  RunConfig rc;
  rc.engine.communication_enabled = !cfg.communication_disabled;
  if (cfg.share_policy == "lowest_first")
    rc.engine.share_policy = EngineConfig::SharePolicy::LowestBatteryFirst;
  else if (cfg.share_policy == "seeded_random")
    rc.engine.share_policy = EngineConfig::SharePolicy::SeededRandom;
  rc.engine.share_seed = cfg.seed;
  rc.schedule.kind = (cfg.schedule == "weighted_random")
                         ? ScheduleSpec::Kind::WeightedRandom
                         : ScheduleSpec::Kind::RoundPermutation;
  rc.schedule.seed = cfg.seed;
  if (cfg.stop == "max_rounds") rc.stop.kind = StopCondition::Kind::MaxRounds;
  else if (cfg.stop == "all_met_demand") rc.stop.kind = StopCondition::Kind::AllMetDemand;
  else if (cfg.stop == "shape_complete") rc.stop.kind = StopCondition::Kind::ShapeComplete;
  else rc.stop.kind = StopCondition::Kind::TargetSize;
  rc.stop.max_rounds = cfg.max_rounds;
  rc.stop.target_size = cfg.target_size;
  rc.crash_script = cfg.crash_script;
  rc.trace = cfg.trace;
  return rc;
}

}  // namespace amoebot
