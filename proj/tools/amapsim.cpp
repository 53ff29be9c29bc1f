// amapsim: scenario-driven uplink MAC simulator.
//
//   amapsim run     --scenario table-5-4 --policy amapmt --seed 1 --out out/
//   amapsim compare --scenario table-5-4 --out out/
//   amapsim presets list
//   amapsim presets dump table-5-2

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amapsim/runner.hpp"
#include "amapsim/simulation.hpp"

namespace fs = std::filesystem;
using namespace amapsim;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<PolicyMode> parse_policies(const std::string& csv) {
  std::vector<PolicyMode> out;
  std::string tok;
  std::istringstream in(csv);
  while (std::getline(in, tok, ',')) {
    PolicyMode mode;
    if (!parse_policy_mode(tok, mode)) {
      throw std::runtime_error("unknown policy '" + tok + "'");
    }
    out.push_back(mode);
  }
  if (out.empty()) throw std::runtime_error("no policies given");
  return out;
}

int cmd_run(const std::string& scenario_arg, const std::string& policy_arg,
            std::int64_t seed_arg, int duration_arg, const std::string& out_dir,
            bool trace) {
  Scenario scenario = resolve_scenario(scenario_arg);
  if (duration_arg > 0) scenario.duration_s = duration_arg;

  PolicyMode policy = scenario.policy_mode;
  if (!policy_arg.empty() && !parse_policy_mode(policy_arg, policy)) {
    throw std::runtime_error("unknown policy '" + policy_arg + "'");
  }
  const std::uint64_t seed =
      seed_arg >= 0 ? static_cast<std::uint64_t>(seed_arg) : scenario.seeds.front();

  Simulation::Options options;
  std::ofstream trace_out;
  if (trace) {
    trace_out = open_out(fs::path(out_dir) /
                         ("trace_" + std::string(policy_mode_name(policy)) + "_" +
                          std::to_string(seed) + ".csv"));
    trace_out << "time_us,seq,target,kind\n";
    options.trace = &trace_out;
  }

  Simulation sim(scenario, policy, seed, options);
  RunResult result;
  result.scenario_id = scenario.id;
  result.policy = policy;
  result.seed = seed;
  result.report = sim.run();

  const std::vector<RunResult> results = {result};
  auto csv = open_out(fs::path(out_dir) / "results.csv");
  write_results_csv(csv, results);
  write_summary(std::cout, results);
  std::cout << "wrote " << (fs::path(out_dir) / "results.csv").string() << "\n";
  return 0;
}

int cmd_compare(const std::string& scenario_arg, const std::string& policies_arg,
                const std::string& seeds_arg, int duration_arg,
                const std::string& out_dir) {
  Scenario scenario = resolve_scenario(scenario_arg);
  if (duration_arg > 0) scenario.duration_s = duration_arg;

  std::vector<PolicyMode> policies;
  if (policies_arg.empty()) {
    policies = {PolicyMode::Amapmt, PolicyMode::BaselineNone,
                PolicyMode::PriorityOnly, PolicyMode::TtlOnly};
  } else {
    policies = parse_policies(policies_arg);
  }

  std::vector<std::uint64_t> seeds = scenario.seeds;
  if (!seeds_arg.empty()) {
    seeds.clear();
    std::istringstream in(seeds_arg);
    std::string tok;
    while (std::getline(in, tok, ',')) seeds.push_back(std::stoull(tok));
  }

  const std::vector<RunResult> results = run_matrix(scenario, policies, seeds);
  auto csv = open_out(fs::path(out_dir) / "results.csv");
  write_results_csv(csv, results);
  auto summary = open_out(fs::path(out_dir) / "summary.txt");
  write_summary(summary, results);
  write_summary(std::cout, results);
  std::cout << "wrote " << (fs::path(out_dir) / "results.csv").string() << " and "
            << (fs::path(out_dir) / "summary.txt").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic TDMA uplink simulator with reservation-based "
               "multiple access and QoS-aware grant scheduling"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string policy_arg;
  std::string policies_arg;
  std::string seeds_arg;
  std::string out_dir = "out";
  std::int64_t seed_arg = -1;
  int duration_arg = 0;
  bool trace = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario/policy/seed");
  run->add_option("--scenario", scenario_arg, "preset name or scenario file")
      ->required();
  run->add_option("--policy", policy_arg,
                  "amapmt | baseline-none | priority-only | ttl-only");
  run->add_option("--seed", seed_arg, "seed (default: first seed of scenario)");
  run->add_option("--duration", duration_arg, "override duration in seconds");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--trace", trace, "write the per-event trace");

  CLI::App* compare = app.add_subcommand("compare", "run the policy x seed matrix");
  compare->add_option("--scenario", scenario_arg, "preset name or scenario file")
      ->required();
  compare->add_option("--policies", policies_arg, "comma-separated policy list");
  compare->add_option("--seeds", seeds_arg, "comma-separated seed list");
  compare->add_option("--duration", duration_arg, "override duration in seconds");
  compare->add_option("--out", out_dir, "output directory");

  CLI::App* presets = app.add_subcommand("presets", "list or dump built-in scenarios");
  std::string presets_action = "list";
  std::string presets_name;
  presets->add_option("action", presets_action, "list | dump");
  presets->add_option("name", presets_name, "preset name (for dump)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(scenario_arg, policy_arg, seed_arg, duration_arg, out_dir,
                     trace);
    }
    if (compare->parsed()) {
      return cmd_compare(scenario_arg, policies_arg, seeds_arg, duration_arg,
                         out_dir);
    }
    if (presets->parsed()) {
      if (presets_action == "list") {
        for (const std::string& name : preset_names()) std::cout << name << "\n";
        return 0;
      }
      if (presets_action == "dump") {
        if (presets_name.empty()) {
          std::cerr << "presets dump requires a name\n";
          return 2;
        }
        std::cout << preset_text(presets_name);
        return 0;
      }
      std::cerr << "unknown presets action '" << presets_action << "'\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
