#include <gtest/gtest.h>

#include <sstream>

#include "safegen/arena.hpp"
#include "safegen/demos.hpp"
#include "safegen/scenario.hpp"
#include "safegen/trace_io.hpp"
#include "test_support.hpp"

using namespace safegen;
using safegen::testing::revealed;
using safegen::testing::S;

namespace {

Trace synthetic(const std::vector<bool>& correct) {
  Trace tr;
  for (std::size_t i = 0; i < correct.size(); ++i) {
    StepRecord r;
    r.t = i + 1;
    r.correct = correct[i];
    r.phase = 1 + i / 4;
    tr.steps.push_back(r);
  }
  tr.header.horizon = correct.size();
  return tr;
}

std::string trace_text(const Trace& t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

}  // namespace

TEST(ScoreStep, Examples) {
  const auto NE = S("N|E");
  EXPECT_TRUE(score_step(GameKind::SG, LearnerOutput::generate(7), S("I"), NE, revealed({0}), nullptr));
  EXPECT_TRUE(score_step(GameKind::SG, LearnerOutput::bottom(), S("E"), S("I"), revealed({0}), nullptr));

  const auto pair = id_impossibility_collections(10);
  EXPECT_TRUE(score_step(GameKind::SI, LearnerOutput::index(3), S("I"), lang::y_family(0),
                         revealed({0}), pair.true_side.get()));
}

TEST(ScoreStep, GenerationRules) {
  const auto s = revealed({1});
  // Seen words and harmful words are wrong.
  EXPECT_FALSE(score_step(GameKind::SG, LearnerOutput::generate(1), S("O"), S("E"), s, nullptr));
  EXPECT_FALSE(score_step(GameKind::SG, LearnerOutput::generate(4), S("I"), S("E"), s, nullptr));
  // Bottom is wrong while the safe language is infinite.
  EXPECT_FALSE(score_step(GameKind::SG, LearnerOutput::bottom(), S("O"), S("E"), s, nullptr));
  // A finite nonempty safe language also licenses Bottom.
  EXPECT_TRUE(score_step(GameKind::SG, LearnerOutput::bottom(), S("Y(-2)"), S("E"), s, nullptr));
  // Plain generation ignores H.
  EXPECT_TRUE(score_step(GameKind::LG, LearnerOutput::generate(4), S("I"), S("E"), s, nullptr));
  // Relaxed: any word is fine when the safe language is not infinite; Bottom never is.
  EXPECT_TRUE(score_step(GameKind::SGRelaxed, LearnerOutput::generate(0), S("E"), S("I"), s, nullptr));
  EXPECT_FALSE(score_step(GameKind::SGRelaxed, LearnerOutput::bottom(), S("E"), S("I"), s, nullptr));
}

TEST(ScoreStep, IdentificationRules) {
  const auto coll = safegen::testing::coll_of({"I", "O", "O"});
  EXPECT_TRUE(score_step(GameKind::LI, LearnerOutput::index(2), S("O"), {}, revealed({1}), coll.get()));
  EXPECT_TRUE(score_step(GameKind::LI, LearnerOutput::index(3), S("O"), {}, revealed({1}), coll.get()));
  EXPECT_FALSE(score_step(GameKind::LI, LearnerOutput::index(1), S("O"), {}, revealed({1}), coll.get()));
  EXPECT_FALSE(score_step(GameKind::LI, LearnerOutput::index(9), S("O"), {}, revealed({1}), coll.get()));
}

TEST(Verdict, WindowSemantics) {
  const auto v = compute_verdict(synthetic({false, true, false, true, true, true}), 3, std::nullopt);
  EXPECT_TRUE(v.converged);
  EXPECT_EQ(v.convergence_step, 3U);
  EXPECT_EQ(v.correct_in_final_window, 3U);
  EXPECT_EQ(v.total_correct, 4U);
  EXPECT_EQ(v.phase_transitions, 1U);

  const auto w = compute_verdict(synthetic({true, true, true, true, false, true}), 3, std::nullopt);
  EXPECT_FALSE(w.converged);
  EXPECT_EQ(w.convergence_step, std::nullopt);
  EXPECT_EQ(w.correct_in_final_window, 2U);

  const auto all = compute_verdict(synthetic({true, true, true}), 2, std::nullopt);
  EXPECT_EQ(all.convergence_step, 0U);
}

TEST(RunGame, KmDemoConverges) {
  auto spec = builtin_scenario("km_demo");
  const Game g = run_scenario(spec);
  EXPECT_TRUE(g.result.verdict.converged);
  EXPECT_LT(*g.result.verdict.convergence_step, 250U);
}

TEST(RunGame, KmOnFourLanguagesConverges) {
  auto spec = builtin_scenario("km_demo");
  spec.true_side->specs = {"I", "O", "E", "Q(-1)"};
  EXPECT_TRUE(run_scenario(spec).result.verdict.converged);
}

TEST(RunGame, NaiveIdentifierNeverRight) {
  const Game g = run_scenario(builtin_scenario("naive_identify"));
  EXPECT_EQ(g.result.verdict.correct_in_final_window, 0U);
  EXPECT_EQ(g.result.verdict.target_index, 2U);
}

TEST(RunGame, EagerLearnerIsDrivenThroughPhases) {
  const Game g = run_scenario(builtin_scenario("thm3_1_eager"));
  EXPECT_GE(g.result.verdict.phase_transitions, 5U);
}

TEST(RunGame, Deterministic) {
  for (const auto& name : builtin_scenario_names()) {
    const auto spec = builtin_scenario(name);
    EXPECT_EQ(trace_text(run_scenario(spec).result.trace), trace_text(run_scenario(spec).result.trace))
        << name;
  }
}

TEST(TraceIo, RoundTrip) {
  for (const char* name : {"sg_inf", "thm3_1_eager", "thm4_2", "telltale_bottom"}) {
    const Game g = run_scenario(builtin_scenario(name));
    const std::string text = trace_text(g.result.trace);
    std::istringstream in(text);
    const Trace back = read_trace(in);
    EXPECT_EQ(trace_text(back), text) << name;
    EXPECT_EQ(back.header.scenario, name);
  }
}

TEST(TraceIo, RejectsBadInput) {
  std::istringstream empty("");
  EXPECT_THROW(read_trace(empty), TraceFormatError);
  std::istringstream wrong_version(
      R"({"record":"header","schema_version":9,"scenario":"x","game":"SG","horizon":1,"window":0,"limit_k":null,"limit_h":null})"
      "\n");
  EXPECT_THROW(read_trace(wrong_version), TraceFormatError);
}

TEST(Replay, ReproducesTheVerdict) {
  for (const auto& name : builtin_scenario_names()) {
    const auto spec = builtin_scenario(name);
    const Game g = run_scenario(spec);
    std::istringstream in(trace_text(g.result.trace));
    const Rescore r = replay(read_trace(in), spec);
    EXPECT_EQ(r.mismatches, 0U) << name;
    EXPECT_EQ(r.verdict, g.result.verdict) << name;
  }
}

TEST(Replay, DetectsTamperedCorrectness) {
  const auto spec = builtin_scenario("sg_inf");
  Game g = run_scenario(spec);
  g.result.trace.steps[10].correct = !g.result.trace.steps[10].correct;
  EXPECT_EQ(replay(g.result.trace, spec).mismatches, 1U);
}
