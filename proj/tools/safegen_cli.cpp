#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "safegen/algebra_check.hpp"
#include "safegen/battery.hpp"
#include "safegen/demos.hpp"
#include "safegen/scenario.hpp"
#include "safegen/set_spec.hpp"
#include "safegen/trace_io.hpp"

namespace fs = std::filesystem;
using namespace safegen;

namespace {

struct RunArgs {
  std::string path;
  std::string out = ".";
  std::string expect;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> window;
};

bool meets(const Verdict& v, const std::string& expect) {
  if (expect.empty()) return true;
  return expect == "converged" ? v.converged : !v.converged;
}

int cmd_run(const RunArgs& a) {
  const ScenarioFile file = load_scenario_file(a.path);
  std::vector<ScenarioSpec> specs;
  if (file.scenario) {
    specs.push_back(*file.scenario);
  } else {
    specs = file.battery->scenarios;
  }
  for (auto& s : specs) apply_overrides(s, a.horizon, a.window);
  for (const auto& s : specs) resolve(s);  // report validation errors before running anything

  fs::create_directories(a.out);
  const auto entries = specs.size() == 1 ? run_battery_serial(specs) : run_battery_parallel(specs);
  int rc = 0;
  for (const auto& e : entries) {
    if (!e.error.empty()) {
      std::cerr << "error: " << e.name << ": " << e.error << "\n";
      rc = 2;
      continue;
    }
    const auto base = fs::path(a.out) / e.name;
    write_text_file(base.string() + ".trace.jsonl", e.trace_jsonl);
    write_text_file(base.string() + ".verdict.json", e.verdict_json);
    if (rc == 0 && !meets(e.verdict, a.expect)) rc = 1;
  }
  if (file.battery) {
    const std::string table = battery_table(entries);
    write_text_file((fs::path(a.out) / (file.battery->name + ".table.txt")).string(), table);
    std::cout << table;
  } else if (entries.front().error.empty()) {
    std::cout << entries.front().verdict_json;
  }
  return rc;
}

int cmd_demo(const std::string& name) {
  const DemoReport r = run_demo(name);
  std::cout << r.text;
  return r.ok ? 0 : 1;
}

int cmd_check_algebra(std::uint64_t seed, std::size_t count, bool serial) {
  const AlgebraReport r =
      serial ? check_algebra_serial(seed, count) : check_algebra_parallel(seed, count);
  if (r.first_failure) {
    std::cout << "FAIL after " << r.checked << " cases\n" << r.counterexample << "\n";
    return 1;
  }
  std::cout << "ok: " << r.checked << " cases (seed " << seed << ")\n";
  return 0;
}

int cmd_replay(const std::string& trace_path, const std::string& scn_path) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("cannot open " + trace_path);
  const Trace trace = read_trace(in);
  ScenarioSpec spec = load_scenario(scn_path);
  apply_overrides(spec, trace.header.horizon, trace.header.window);
  const Rescore r = replay(trace, spec);
  std::cout << verdict_json(r.verdict, spec.name);
  if (r.mismatches) {
    std::cerr << "replay: " << r.mismatches << " step(s) disagree with the stored scoring\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe generation and identification games in the limit"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario or battery file");
  run_cmd->add_option("scenario", run.path, "Scenario (.scn) file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Directory for traces and verdicts");
  run_cmd->add_option("--expect", run.expect, "Exit 1 unless every verdict matches")
      ->check(CLI::IsMember({"converged", "failed"}));
  run_cmd->add_option("--horizon-override", run.horizon, "Replace the horizon T");
  run_cmd->add_option("--window-override", run.window, "Replace the window W");

  std::string demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in demo and print its report");
  demo_cmd->add_option("name", demo, "Demo name")->required()->check(CLI::IsMember(demo_names()));

  std::uint64_t seed = 1;
  std::size_t count = 1000;
  bool serial = false;
  auto* alg_cmd = app.add_subcommand("check-algebra", "Fuzz the set algebra against brute force");
  alg_cmd->add_option("--seed", seed, "Fuzz seed");
  alg_cmd->add_option("--count", count, "Number of random pairs");
  alg_cmd->add_flag("--serial", serial, "Use the serial reference loop");

  std::string trace_path;
  std::string scn_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-score a stored trace");
  replay_cmd->add_option("trace", trace_path, "Trace (.jsonl)")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("scenario", scn_path, "Scenario that produced it")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*demo_cmd) return cmd_demo(demo);
    if (*alg_cmd) return cmd_check_algebra(seed, count, serial);
    if (*replay_cmd) return cmd_replay(trace_path, scn_path);
  } catch (const SetSpecError& e) {
    std::cerr << "set-spec error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
