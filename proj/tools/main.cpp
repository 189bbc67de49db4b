#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "amoebot/config.hpp"
#include "amoebot/metrics.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/svg.hpp"
#include "amoebot/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace amoebot;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPropertyFailure = 2;
constexpr int kExitEngineFault = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct RunResult {
  RunReport report;
  std::string rounds;
  std::string summary;
};

int do_run(const std::string& config_path, std::optional<std::uint64_t> seed,
           const std::string& out_dir, std::optional<std::uint64_t> frames_every,
           std::optional<std::uint64_t> max_rounds) {
  SimConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (max_rounds) cfg.max_rounds = *max_rounds;
  if (frames_every) cfg.frames_every = *frames_every;

  SystemState s = make_system(cfg);
  auto behavior = make_behavior(cfg);
  RunConfig rc = make_run_config(cfg);

  fs::create_directories(out_dir);
  if (cfg.frames_every > 0) {
    write_file(fs::path(out_dir) / "frame_0.svg", render_svg(s));
    rc.on_round = [&](const SystemState& sys, const RoundStats& stats) {
      if (stats.round % cfg.frames_every == 0)
        write_file(fs::path(out_dir) / ("frame_" + std::to_string(stats.round) + ".svg"),
                   render_svg(sys));
    };
  }

  try {
    RunReport report = run(s, *behavior, rc);
    write_file(fs::path(out_dir) / "rounds.csv", rounds_csv(report));
    write_file(fs::path(out_dir) / "summary.json",
               summary_json(s, report, cfg.seed));
    if (cfg.trace)
      write_file(fs::path(out_dir) / "trace.csv", trace_csv(report));
    if (cfg.frames_every > 0)
      write_file(fs::path(out_dir) / ("frame_" +
                                      std::to_string(s.round_counter) + ".svg"),
                 render_svg(s));
    std::cout << "run complete: " << (report.rounds.size() - 1) << " rounds, stop="
              << report.stop_reason << "\n";
    return kExitOk;
  } catch (const EngineFault& e) {
    std::cerr << "engine fault: " << e.what() << "\n";
    write_file(fs::path(out_dir) / "fault_snapshot.json", snapshot_json(s));
    return kExitEngineFault;
  }
}

int do_sweep(const std::string& config_path, const std::string& vary,
             int repeats, std::optional<std::uint64_t> seed,
             const std::string& out_dir) {
  SimConfig base = load_config(config_path);
  if (seed) base.seed = *seed;

  std::size_t eq = vary.find('=');
  if (eq == std::string::npos)
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "--vary expects key=v1;v2;...");
  std::string key = vary.substr(0, eq);
  std::vector<std::string> values;
  {
    std::string rest = vary.substr(eq + 1);
    std::size_t pos = 0;
    while (pos != std::string::npos) {
      std::size_t semi = rest.find(';', pos);
      values.push_back(rest.substr(pos, semi == std::string::npos ? semi : semi - pos));
      pos = semi == std::string::npos ? semi : semi + 1;
    }
  }
  if (values.empty())
    throw ValidationError(ValidationError::Kind::BadConfig,
                          "--vary needs at least one value");

  auto apply = [&](SimConfig& cfg, const std::string& value) {
    if (key == "system.size") cfg.size = std::stoull(value);
    else if (key == "system.roots") cfg.roots_spec = value;
    else if (key == "system.kappa") cfg.kappa = std::stod(value);
    else if (key == "system.alpha") cfg.alpha = std::stod(value);
    else if (key == "system.demand_value") cfg.demand_value = std::stod(value);
    else if (key == "behavior.max_size") cfg.max_size = std::stoull(value);
    else
      throw ValidationError(ValidationError::Kind::BadConfig,
                            "unsupported sweep key: " + key);
  };

  fs::create_directories(out_dir);
  std::string csv = "value,mean_rounds,stddev,cells,failures\n";
  for (const std::string& value : values) {
    std::vector<double> rounds;
    int failures = 0;
    for (int rep = 0; rep < repeats; ++rep) {
      SimConfig cfg = base;
      apply(cfg, value);
      cfg.seed = mix_seed(base.seed, std::hash<std::string>{}(value), rep);
      try {
        SystemState s = make_system(cfg);
        auto behavior = make_behavior(cfg);
        RunConfig rc = make_run_config(cfg);
        RunReport report = run(s, *behavior, rc);
        if (report.stop_satisfied)
          rounds.push_back(static_cast<double>(report.rounds.back().round));
        else
          ++failures;
      } catch (const std::exception& e) {
        std::cerr << "cell " << value << " rep " << rep << ": " << e.what() << "\n";
        ++failures;
      }
    }
    double mean = 0.0, sd = 0.0;
    if (!rounds.empty()) {
      mean = std::accumulate(rounds.begin(), rounds.end(), 0.0) / rounds.size();
      for (double r : rounds) sd += (r - mean) * (r - mean);
      sd = rounds.size() > 1 ? std::sqrt(sd / (rounds.size() - 1)) : 0.0;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%s,%.3f,%.3f,%d,%d\n", value.c_str(),
                  mean, sd, repeats, failures);
    csv += line;
    std::cout << "sweep " << key << "=" << value << ": mean " << mean
              << " rounds over " << (repeats - failures) << " cells\n";
  }
  write_file(fs::path(out_dir) / "sweep.csv", csv);
  return kExitOk;
}

int do_verify(const std::string& scope, std::uint64_t seed) {
  auto results = verify::run_scope(scope, seed);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %-12s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.details.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energysim: energy distribution on lattice particle systems"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", vary, scope = "all";
  std::optional<std::uint64_t> seed, frames_every, max_rounds;
  int repeats = 20;

  CLI::App* run_cmd = app.add_subcommand("run", "execute one simulation");
  run_cmd->add_option("--config", config_path, "config file")->required();
  run_cmd->add_option("--seed", seed, "override schedule seed");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--frames-every", frames_every, "emit an SVG frame every N rounds");
  run_cmd->add_option("--max-rounds", max_rounds, "override round cap");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd->add_option("--config", config_path, "config file")->required();
  sweep_cmd->add_option("--vary", vary, "key=v1;v2;... (e.g. system.size=7;19;37)")->required();
  sweep_cmd->add_option("--repeats", repeats, "repeats per value");
  sweep_cmd->add_option("--seed", seed, "base seed");
  sweep_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--scope", scope,
                         "all|lemma2|lemma3|lemma4|lemma5|lemma6|lemma8|lemma9|conservation");
  std::uint64_t verify_seed = 1;
  verify_cmd->add_option("--seed", verify_seed, "base seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return do_run(config_path, seed, out_dir, frames_every, max_rounds);
    if (sweep_cmd->parsed())
      return do_sweep(config_path, vary, repeats, seed, out_dir);
    return do_verify(scope, verify_seed);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const EngineFault& e) {
    std::cerr << "engine fault: " << e.what() << "\n";
    return kExitEngineFault;
  }
}
