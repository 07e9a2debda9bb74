#include <gtest/gtest.h>

#include <map>

#include "safegen/adversaries.hpp"
#include "safegen/arena.hpp"
#include "test_support.hpp"

using namespace safegen;
using safegen::testing::FnLearner;
using safegen::testing::S;

namespace {

std::vector<LabeledExample> first_steps(Adversary& adv, std::size_t n) {
  std::vector<LabeledExample> out;
  for (std::size_t t = 1; t <= n; ++t) out.push_back(adv.emit(t));
  return out;
}

PlayResult play_for(Adversary& adv, Learner& l, GameKind game, std::size_t horizon,
                    const LanguageCollection* coll = nullptr) {
  PlayOptions o;
  o.game = game;
  o.horizon = horizon;
  o.window = std::min<std::size_t>(10, horizon - 1);
  o.score_collection = coll;
  return play(adv, l, o);
}

}  // namespace

TEST(FairInterleaver, Examples) {
  FairInterleaver a(lang::integers(), lang::y_family(0));
  EXPECT_EQ(first_steps(a, 4), (std::vector<LabeledExample>{
                                   {0, Label::True}, {0, Label::Harm}, {1, Label::True}, {2, Label::Harm}}));
  FairInterleaver b(S("O"), S("E"));
  EXPECT_EQ(first_steps(b, 4), (std::vector<LabeledExample>{
                                   {1, Label::True}, {0, Label::Harm}, {3, Label::True}, {2, Label::Harm}}));
}

TEST(FairInterleaver, EqualPairRevealsBothLabels) {
  FairInterleaver a(S("E"), S("E"));
  RevealedSet s;
  for (std::size_t t = 1; t <= 40; ++t) s.add(a.emit(t));
  for (Element x : {0, 2, 4, 18}) {
    EXPECT_TRUE(s.pos().count(x) && s.neg().count(x)) << x;
  }
}

TEST(PositiveStream, EnumeratesK) {
  PositiveStream p(S("Q(-1)"));
  const auto steps = first_steps(p, 4);
  EXPECT_EQ(steps[2], (LabeledExample{-2, Label::True}));
  EXPECT_EQ(p.committed().k, lang::q_family(1));
}

TEST(PhasedId, EagerGuessTriggersInjection) {
  const auto pair = id_impossibility_collections(50);
  PhasedIdAdversary adv(pair.true_side);
  FnLearner eager([](const RevealedSet&) { return LearnerOutput::index(3); });
  const auto r = play_for(adv, eager, GameKind::SI, 4, pair.true_side.get());
  EXPECT_FALSE(r.trace.steps[0].injected);
  EXPECT_EQ(r.trace.steps[0].phase, 2U);
  EXPECT_TRUE(r.trace.steps[1].injected);
  EXPECT_EQ(r.trace.steps[1].example, (LabeledExample{-1, Label::Harm}));
  EXPECT_EQ(adv.injections(), (std::vector<Element>{-1}));
}

TEST(PhasedId, StubbornLearnerSeesPlainInterleaving) {
  const auto pair = id_impossibility_collections(50);
  PhasedIdAdversary adv(pair.true_side);
  FnLearner stubborn([](const RevealedSet&) { return LearnerOutput::index(1); });
  const auto r = play_for(adv, stubborn, GameKind::SI, 40, pair.true_side.get());
  // T1 = universe order labelled 1, T2 = 0, 2, 4, ... labelled 0, interleaved.
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const auto& ex = r.trace.steps[i].example;
    const std::size_t k = i / 2 + 1;
    if (i % 2 == 0) {
      ASSERT_EQ(ex, (LabeledExample{universe_elem(UniverseIndex{k}), Label::True}));
    } else {
      ASSERT_EQ(ex, (LabeledExample{2 * static_cast<Element>(k - 1), Label::Harm}));
    }
  }
  EXPECT_EQ(r.final_pair.k, lang::integers());
  EXPECT_EQ(r.final_pair.h, lang::y_family(0));
  EXPECT_EQ(r.verdict.total_correct, 0U);
}

TEST(PhasedId, SuccessiveEagerGuessesInjectInOrder) {
  const auto pair = id_impossibility_collections(100);
  PhasedIdAdversary adv(pair.true_side);
  // Names Q(-l) in phase l, i.e. index l + 2, read back from the adversary.
  FnLearner eager([&](const RevealedSet&) { return LearnerOutput::index(adv.phase() + 2); });
  play_for(adv, eager, GameKind::SI, 10, pair.true_side.get());
  ASSERT_GE(adv.injections().size(), 5U);
  for (std::size_t l = 1; l <= 5; ++l) {
    const Element x = adv.injections()[l - 1];
    const auto a = static_cast<std::int64_t>(l);
    EXPECT_EQ(x, -a);
    EXPECT_TRUE(lang::y_family(a).member(x));
    EXPECT_TRUE(pair.harm_side->at(1).member(x));
    EXPECT_FALSE(lang::y_family(a - 1).member(x));
  }
}

TEST(Diagonal, CorrectGeneratorForcesPhases) {
  const auto pair = pstar_collections(400);
  DiagonalAdversary adv(pair.true_side, pair.harm_side);
  // Exact generator for whatever pair the adversary currently stands behind.
  FnLearner oracle([&](const RevealedSet& s) {
    const auto p = adv.committed();
    return reference_safe_generate(p.k, p.h, s);
  });
  play_for(adv, oracle, GameKind::SG, 200);
  EXPECT_GE(adv.boundaries().size(), 1U);
}

TEST(Diagonal, BottomLearnerNeverAdvances) {
  const auto pair = pstar_collections(400);
  DiagonalAdversary adv(pair.true_side, pair.harm_side);
  const auto initial = adv.committed();
  EXPECT_TRUE(set_difference(initial.k, initial.h).cardinality().is_infinite());
  AlwaysBottom bottom;
  const auto r = play_for(adv, bottom, GameKind::SG, 200);
  EXPECT_EQ(adv.phase(), 1U);
  EXPECT_EQ(r.final_pair.k, initial.k);
  EXPECT_EQ(r.final_pair.h, initial.h);
  EXPECT_FALSE(r.verdict.converged);
  EXPECT_EQ(r.verdict.total_correct, 0U);
}

TEST(Diagonal, SkippedElementsAreFlushedAtEveryBoundary) {
  const auto pair = pstar_collections(600);
  DiagonalAdversary adv(pair.true_side, pair.harm_side);
  KmGenerator km(pair.true_side);
  const auto r = play_for(adv, km, GameKind::SG, 600);
  ASSERT_GE(adv.boundaries().size(), 3U);

  std::map<Element, std::size_t> first_pos;
  std::map<Element, std::size_t> first_neg;
  for (const auto& rec : r.trace.steps) {
    (rec.example.label == Label::True ? first_pos : first_neg).emplace(rec.example.element, rec.t);
  }
  const auto& top_k = pair.true_side->at(1);
  const auto& top_h = pair.harm_side->at(1);
  for (const auto& b : adv.boundaries()) {
    EXPECT_EQ(b.k_queue, 0U);
    EXPECT_EQ(b.h_queue, 0U);
    for (std::uint64_t rank = 1; rank <= std::max(b.k_cursor, b.h_cursor); ++rank) {
      const Element x = universe_elem(UniverseIndex{rank});
      if (rank <= b.k_cursor && top_k.member(x)) {
        ASSERT_TRUE(first_pos.count(x) && first_pos[x] <= b.step) << x;
      }
      if (rank <= b.h_cursor && top_h.member(x)) {
        ASSERT_TRUE(first_neg.count(x) && first_neg[x] <= b.step) << x;
      }
    }
  }
}

TEST(Adversaries, LabelsAreTruthful) {
  const auto pair = pstar_collections(400);
  DiagonalAdversary adv(pair.true_side, pair.harm_side);
  KmGenerator km(pair.true_side);
  RevealedSet s;
  for (std::size_t t = 1; t <= 400; ++t) {
    const auto ex = adv.emit(t);
    const auto p = adv.committed();
    ASSERT_TRUE(ex.label == Label::True ? p.k.member(ex.element) : p.h.member(ex.element)) << t;
    s.add(ex);
    adv.observe(km.step(s), s);
  }
  EXPECT_GE(adv.phase(), 2U);
}
