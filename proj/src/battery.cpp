#include "safegen/battery.hpp"

#include <cstdio>
#include <sstream>

#include "safegen/trace_io.hpp"

namespace safegen {

BatteryEntry run_entry(const ScenarioSpec& spec) {
  BatteryEntry e;
  e.name = spec.name;
  try {
    const Game g = run_scenario(spec);
    std::ostringstream os;
    write_trace(os, g.result.trace);
    e.trace_jsonl = os.str();
    e.verdict = g.result.verdict;
    e.verdict_json = verdict_json(e.verdict, spec.name);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

std::vector<BatteryEntry> run_battery_serial(const std::vector<ScenarioSpec>& specs) {
  std::vector<BatteryEntry> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(run_entry(s));
  return out;
}

std::vector<BatteryEntry> run_battery_parallel(const std::vector<ScenarioSpec>& specs) {
  std::vector<BatteryEntry> out(specs.size());
  const auto n = static_cast<std::int64_t>(specs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_entry(specs[static_cast<std::size_t>(i)]);
  return out;
}

std::string battery_table(const std::vector<BatteryEntry>& entries) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %-10s %-12s %-14s %-8s\n", "scenario", "converged",
                "final-window", "conv. step", "phases");
  out += line;
  for (const auto& e : entries) {
    if (!e.error.empty()) {
      out += e.name + "  ERROR: " + e.error + "\n";
      continue;
    }
    const auto& v = e.verdict;
    const std::string window = std::to_string(v.correct_in_final_window) + "/" + std::to_string(v.window);
    const std::string step = v.convergence_step ? std::to_string(*v.convergence_step) : "-";
    std::snprintf(line, sizeof line, "%-28s %-10s %-12s %-14s %-8zu\n", e.name.c_str(),
                  v.converged ? "yes" : "no", window.c_str(), step.c_str(), v.phase_transitions);
    out += line;
  }
  return out;
}

}  // namespace safegen
