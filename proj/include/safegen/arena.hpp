// Game loop, per-step scoring and finite-horizon verdicts.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safegen/adversaries.hpp"
#include "safegen/learners.hpp"

namespace safegen {

/// LG: plain generation from K. SG / SGInf / SGRelaxed: safe generation.
/// SI: safe identification. LI: identification of K.
enum class GameKind { LG, SG, SGInf, SGRelaxed, SI, LI };

const char* game_name(GameKind g);
std::optional<GameKind> parse_game(std::string_view name);
bool is_generation(GameKind g);

/// Correctness of one answer. `revealed` is S_t including this step's
/// example; `coll` is the index space for SI and LI answers.
bool score_step(GameKind kind, const LearnerOutput& out, const EventuallyPeriodicSet& k,
                const EventuallyPeriodicSet& h, const RevealedSet& revealed,
                const LanguageCollection* coll);

struct StepRecord {
  std::size_t t = 0;
  LabeledExample example;
  bool injected = false;
  LearnerOutput output;
  bool correct = false;
  /// Adversary phase after it observed this step's output.
  std::size_t phase = 1;
  // Scoring pair, recorded for adaptive adversaries only: a set-spec or a
  // collection reference such as "true[3]".
  std::optional<std::string> k_spec;
  std::optional<std::string> h_spec;
  Notes notes;
};

struct TraceHeader {
  int schema_version = 1;
  std::string scenario;
  GameKind game = GameKind::SG;
  std::size_t horizon = 0;
  std::size_t window = 0;
  std::optional<std::string> limit_k;
  std::optional<std::string> limit_h;
};

struct Trace {
  TraceHeader header;
  std::vector<StepRecord> steps;
};

struct Verdict {
  bool converged = false;
  /// t' such that every step after t' is correct; set only when converged.
  std::optional<std::size_t> convergence_step;
  std::size_t correct_in_final_window = 0;
  std::size_t window = 0;
  std::size_t horizon = 0;
  std::size_t phase_transitions = 0;
  std::optional<std::size_t> target_index;
  std::size_t total_correct = 0;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict compute_verdict(const Trace& trace, std::size_t window,
                        std::optional<std::size_t> target_index);

/// Smallest index whose language is the identification target (K \ H for
/// SI, K for LI) within the declared prefix; nullopt for generation games.
std::optional<std::size_t> target_index(GameKind kind, const LanguageCollection* coll,
                                        const LanguagePair& pair);

struct PlayOptions {
  GameKind game = GameKind::SG;
  std::size_t horizon = 0;
  std::size_t window = 1;
  std::string scenario;
  const LanguageCollection* score_collection = nullptr;
};

struct PlayResult {
  Trace trace;
  Verdict verdict;
  /// Scoring pair of the last step.
  LanguagePair final_pair;
};

/// Runs the protocol for `horizon` steps: the adversary emits, the learner
/// sees S_t and answers, the answer is scored against the adversary's
/// committed pair, then the adversary observes the answer.
PlayResult play(Adversary& adversary, Learner& learner, const PlayOptions& options);

struct Rescore {
  Trace trace;
  Verdict verdict;
  std::size_t mismatches = 0;  // steps whose stored correctness disagrees
};

/// Recomputes every step's correctness from the stored examples and outputs.
Rescore rescore(const Trace& trace, const LanguageCollection* score_collection,
                const std::function<LanguagePair(const StepRecord&)>& pair_for,
                std::size_t window, std::optional<std::size_t> target);

}  // namespace safegen
