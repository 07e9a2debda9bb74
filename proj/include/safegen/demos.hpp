// Canned scenarios and the demo reports built on them.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "safegen/scenario.hpp"

namespace safegen {

/// Names of the built-in scenarios (the same documents ship in scenarios/).
std::vector<std::string> builtin_scenario_names();
/// JSON text of a built-in scenario; throws ScenarioError for unknown names.
const std::string& builtin_scenario_text(std::string_view name);
ScenarioSpec builtin_scenario(std::string_view name);

struct DemoReport {
  std::string text;
  bool ok = false;  // the property the demo exhibits held
};

std::vector<std::string> demo_names();
/// Runs a demo; throws ScenarioError for unknown names.
DemoReport run_demo(std::string_view name);

}  // namespace safegen
