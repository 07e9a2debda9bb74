// Scenario files (.scn, JSON) and their resolution into runnable games.
//
// {
//   "version": 1,
//   "name": "km_demo",
//   "game": "LG" | "SG" | "SGInf" | "SGRelaxed" | "SI" | "LI",
//   "collections": {"family": "id_impossibility" | "pstar", "prefix_len": 2000}
//                | {"true": {"list": [set-spec...], "telltales": {"1": [0, 1]}},
//                   "harm": {...}},
//   "K": set-spec | "adaptive",
//   "H": set-spec | "adaptive",
//   "adversary": {"kind": "positive" | "fair" | "phased_id" | "diagonal"},
//   "learner": {"kind": ..., "mode": "strict" | "relaxed", "promise": true,
//               "m_slack": 0, "subroutine": "reference" | "reference_relaxed",
//               "K": set-spec, "H": set-spec},
//   "horizon": 300,
//   "window": 50
// }
//
// A battery file carries {"version": 1, "name": ..., "battery": [...]} where
// each entry is a path relative to the battery file or an inline scenario.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "safegen/adversaries.hpp"
#include "safegen/arena.hpp"
#include "safegen/learners.hpp"

namespace safegen {

inline constexpr int kScenarioVersion = 1;

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CollectionConfig {
  std::vector<std::string> specs;
  std::map<std::size_t, std::vector<Element>> telltales;
};

struct LearnerConfig {
  std::string kind;
  SgMode mode = SgMode::Strict;
  bool promise = true;
  std::uint64_t m_slack = 0;
  std::string subroutine = "reference";
  std::optional<std::string> k;
  std::optional<std::string> h;
};

struct ScenarioSpec {
  std::string name;
  GameKind game = GameKind::SG;
  std::optional<std::string> family;
  std::size_t prefix_len = 0;  // 0: the horizon
  std::optional<CollectionConfig> true_side;
  std::optional<CollectionConfig> harm_side;
  std::optional<std::string> k;
  std::optional<std::string> h;
  std::string adversary;
  LearnerConfig learner;
  std::size_t horizon = 0;
  std::size_t window = 0;
};

struct Battery {
  std::string name;
  std::vector<ScenarioSpec> scenarios;
};

struct ScenarioFile {
  std::optional<ScenarioSpec> scenario;
  std::optional<Battery> battery;
};

/// Parses a scenario or battery document; `base` resolves battery paths.
ScenarioFile parse_scenario_text(const std::string& text, const std::filesystem::path& base);
ScenarioFile load_scenario_file(const std::filesystem::path& path);
/// Loads a file that must hold a single scenario.
ScenarioSpec load_scenario(const std::filesystem::path& path);

void apply_overrides(ScenarioSpec& spec, std::optional<std::size_t> horizon,
                     std::optional<std::size_t> window);

/// Collections and the fixed pair of a validated scenario.
struct Instance {
  std::shared_ptr<const LanguageCollection> true_side;
  std::shared_ptr<const LanguageCollection> harm_side;
  std::optional<EventuallyPeriodicSet> k;
  std::optional<EventuallyPeriodicSet> h;
};

/// Builds collections and checks every cross-field rule, including the
/// infinite-difference promise for SGInf games.
Instance resolve(const ScenarioSpec& spec);

std::unique_ptr<Adversary> make_adversary(const ScenarioSpec& spec, const Instance& inst);
std::unique_ptr<Learner> make_learner(const ScenarioSpec& spec, const Instance& inst);

struct Game {
  Instance instance;
  std::unique_ptr<Adversary> adversary;
  std::unique_ptr<Learner> learner;
  PlayResult result;
};

Game run_scenario(const ScenarioSpec& spec);

/// Re-scores a stored trace against its scenario.
Rescore replay(const Trace& trace, const ScenarioSpec& spec);

}  // namespace safegen
