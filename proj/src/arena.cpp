#include "safegen/arena.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "safegen/set_spec.hpp"

namespace safegen {

namespace {

constexpr std::array<std::pair<GameKind, const char*>, 6> kGames{{
    {GameKind::LG, "LG"},
    {GameKind::SG, "SG"},
    {GameKind::SGInf, "SGInf"},
    {GameKind::SGRelaxed, "SGRelaxed"},
    {GameKind::SI, "SI"},
    {GameKind::LI, "LI"},
}};

}  // namespace

const char* game_name(GameKind g) {
  for (const auto& [k, n] : kGames) {
    if (k == g) return n;
  }
  return "?";
}

std::optional<GameKind> parse_game(std::string_view name) {
  for (const auto& [k, n] : kGames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

bool is_generation(GameKind g) { return g != GameKind::SI && g != GameKind::LI; }

bool score_step(GameKind kind, const LearnerOutput& out, const EventuallyPeriodicSet& k,
                const EventuallyPeriodicSet& h, const RevealedSet& revealed,
                const LanguageCollection* coll) {
  switch (kind) {
    case GameKind::LG:
      return out.is_generate() && k.member(out.value) && !revealed.seen(out.value);
    case GameKind::SG:
    case GameKind::SGInf: {
      const auto diff = set_difference(k, h);
      if (out.is_bottom()) return !diff.cardinality().is_infinite();
      return out.is_generate() && diff.member(out.value) && !revealed.seen(out.value);
    }
    case GameKind::SGRelaxed: {
      if (!out.is_generate()) return false;
      const auto diff = set_difference(k, h);
      if (!diff.cardinality().is_infinite()) return true;
      return diff.member(out.value) && !revealed.seen(out.value);
    }
    case GameKind::SI:
    case GameKind::LI: {
      if (!out.is_index() || !coll || out.value < 1 ||
          out.as_index() > coll->declared_prefix_len()) {
        return false;
      }
      const auto target = kind == GameKind::SI ? set_difference(k, h) : k;
      return coll->at(out.as_index()) == target;
    }
  }
  return false;
}

Verdict compute_verdict(const Trace& trace, std::size_t window,
                        std::optional<std::size_t> target) {
  Verdict v;
  v.window = window;
  v.horizon = trace.steps.size();
  v.target_index = target;
  std::size_t last_wrong = 0;
  for (const auto& r : trace.steps) {
    if (r.correct) {
      ++v.total_correct;
    } else {
      last_wrong = r.t;
    }
  }
  const std::size_t from = v.horizon > window ? v.horizon - window : 0;
  for (std::size_t i = from; i < v.horizon; ++i) v.correct_in_final_window += trace.steps[i].correct;
  v.converged = window > 0 && v.horizon >= window && v.correct_in_final_window == window;
  if (v.converged) v.convergence_step = last_wrong;
  v.phase_transitions = trace.steps.empty() ? 0 : trace.steps.back().phase - 1;
  return v;
}

std::optional<std::size_t> target_index(GameKind kind, const LanguageCollection* coll,
                                        const LanguagePair& pair) {
  if (is_generation(kind) || !coll) return std::nullopt;
  const auto target = kind == GameKind::SI ? set_difference(pair.k, pair.h) : pair.k;
  for (std::size_t i = 1; i <= coll->declared_prefix_len(); ++i) {
    if (coll->at(i) == target) return i;
  }
  return std::nullopt;
}

PlayResult play(Adversary& adversary, Learner& learner, const PlayOptions& options) {
  PlayResult res;
  auto& trace = res.trace;
  trace.header.scenario = options.scenario;
  trace.header.game = options.game;
  trace.header.horizon = options.horizon;
  trace.header.window = options.window;
  if (auto lp = adversary.limit_pair()) {
    trace.header.limit_k = to_set_spec(lp->k);
    trace.header.limit_h = to_set_spec(lp->h);
  }
  trace.steps.reserve(options.horizon);

  RevealedSet s;
  res.final_pair = adversary.committed();
  for (std::size_t t = 1; t <= options.horizon; ++t) {
    const LabeledExample ex = adversary.emit(t);
    const LanguagePair pair = adversary.committed();
    const bool truthful =
        ex.label == Label::True ? pair.k.member(ex.element) : pair.h.member(ex.element);
    if (!truthful) {
      throw std::logic_error("adversary emitted " + std::to_string(ex.element) +
                             " with a label its committed pair contradicts at step " +
                             std::to_string(t));
    }
    s.add(ex);

    StepRecord rec;
    rec.t = t;
    rec.example = ex;
    rec.injected = adversary.injected();
    rec.output = learner.step(s);
    LanguagePair scoring = adversary.committed();
    rec.correct = score_step(options.game, rec.output, scoring.k, scoring.h, s,
                             options.score_collection);
    if (adversary.adaptive()) {
      if (auto refs = adversary.committed_refs()) {
        rec.k_spec = refs->first;
        rec.h_spec = refs->second;
      } else {
        rec.k_spec = to_set_spec(scoring.k);
        rec.h_spec = to_set_spec(scoring.h);
      }
    }
    rec.notes = learner.notes();
    trace.steps.push_back(std::move(rec));
    adversary.observe(trace.steps.back().output, s);
    trace.steps.back().phase = adversary.phase();
    res.final_pair = std::move(scoring);
  }
  res.verdict = compute_verdict(
      trace, options.window, target_index(options.game, options.score_collection, res.final_pair));
  return res;
}

Rescore rescore(const Trace& trace, const LanguageCollection* score_collection,
                const std::function<LanguagePair(const StepRecord&)>& pair_for,
                std::size_t window, std::optional<std::size_t> target) {
  Rescore out;
  out.trace = trace;
  RevealedSet s;
  for (auto& rec : out.trace.steps) {
    s.add(rec.example);
    const auto pair = pair_for(rec);
    const bool c = score_step(trace.header.game, rec.output, pair.k, pair.h, s, score_collection);
    if (c != rec.correct) ++out.mismatches;
    rec.correct = c;
  }
  out.verdict = compute_verdict(out.trace, window, target);
  return out;
}

}  // namespace safegen
