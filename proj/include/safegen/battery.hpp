// Runs independent scenarios, serially or across OpenMP threads.
#pragma once

#include <string>
#include <vector>

#include "safegen/arena.hpp"
#include "safegen/scenario.hpp"

namespace safegen {

struct BatteryEntry {
  std::string name;
  std::string trace_jsonl;  // serialized trace, empty on error
  std::string verdict_json;
  Verdict verdict;
  std::string error;
};

BatteryEntry run_entry(const ScenarioSpec& spec);

std::vector<BatteryEntry> run_battery_serial(const std::vector<ScenarioSpec>& specs);
/// One scenario per iteration; output order matches the input order.
std::vector<BatteryEntry> run_battery_parallel(const std::vector<ScenarioSpec>& specs);

/// Fixed-width comparison table, one row per entry.
std::string battery_table(const std::vector<BatteryEntry>& entries);

}  // namespace safegen
