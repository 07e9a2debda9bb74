#include <gtest/gtest.h>

#include <random>

#include "safegen/collections.hpp"
#include "test_support.hpp"

using namespace safegen;
using safegen::testing::coll_of;
using safegen::testing::revealed;
using safegen::testing::S;

TEST(Consistency, TrueSideExamples) {
  EXPECT_TRUE(is_consistent_true(S("O"), revealed({1, 3}, {2})));
  EXPECT_FALSE(is_consistent_true(S("E"), revealed({1})));
  EXPECT_TRUE(is_consistent_true(S("I"), revealed({-4, 7}, {0})));
}

TEST(Consistency, HarmSideExamples) {
  EXPECT_TRUE(is_consistent_harm(lang::y_family(0), revealed({}, {0, 2, 4})));
  EXPECT_FALSE(is_consistent_harm(lang::y_family(0), revealed({}, {-1})));
  EXPECT_TRUE(is_consistent_harm(S("N|E"), revealed({})));
  EXPECT_TRUE(is_consistent_harm(S("E"), revealed({1, 3})));  // positives are ignored
}

TEST(ConsistentIndices, Examples) {
  const auto c = coll_of({"I", "O", "E"});
  EXPECT_EQ(consistent_indices(*c, revealed({1}), 3, Side::True), (std::vector<std::size_t>{1, 2}));
  const auto one = consistent_indices(*c, revealed({1}), 1, Side::True);
  EXPECT_LE(one.size(), 1U);
  const auto dup = coll_of({"O", "O"});
  EXPECT_EQ(consistent_indices(*dup, revealed({1}), 2, Side::True), (std::vector<std::size_t>{1, 2}));
}

TEST(ConsistentIndices, ShrinkAsEvidenceGrows) {
  const auto c = coll_of({"I", "O", "E", "Q(-1)", "Y(-2)", "N|E", "Ray(3,3)", "N"});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Element> pick(-6, 6);
  std::bernoulli_distribution positive(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    RevealedSet s;
    auto before_t = consistent_indices(*c, s, 8, Side::True);
    auto before_h = consistent_indices(*c, s, 8, Side::Harm);
    for (int k = 0; k < 12; ++k) {
      const LabeledExample ex{pick(rng), positive(rng) ? Label::True : Label::Harm};
      s.add(ex);
      const auto t = consistent_indices(*c, s, 8, Side::True);
      const auto h = consistent_indices(*c, s, 8, Side::Harm);
      ASSERT_TRUE(std::includes(before_t.begin(), before_t.end(), t.begin(), t.end()));
      ASSERT_TRUE(std::includes(before_h.begin(), before_h.end(), h.begin(), h.end()));
      if (ex.label == Label::True) ASSERT_EQ(h, before_h);
      if (ex.label == Label::Harm) ASSERT_EQ(t, before_t);
      before_t = t;
      before_h = h;
    }
  }
}

TEST(ConsistencyTracker, MatchesDirectScan) {
  const auto c = coll_of({"I", "O", "E", "Q(-1)", "Y(-2)", "N|E", "Ray(3,3)", "N"});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Element> pick(-8, 8);
  std::bernoulli_distribution positive(0.5);
  for (Side side : {Side::True, Side::Harm}) {
    ConsistencyTracker tr(*c, side);
    RevealedSet s;
    for (std::size_t t = 1; t <= 20; ++t) {
      s.add({pick(rng), positive(rng) ? Label::True : Label::Harm});
      tr.sync(s, t);
      ASSERT_EQ(tr.consistent_list(), consistent_indices(*c, s, t, side)) << t;
    }
  }
}

TEST(RevealedSet, TracksLabelsAndRanks) {
  RevealedSet s;
  s.add({2, Label::True});
  s.add({2, Label::Harm});
  s.add({-3, Label::Harm});
  EXPECT_EQ(s.step(), 3U);
  EXPECT_EQ(s.pos(), (std::set<Element>{2}));
  EXPECT_EQ(s.neg(), (std::set<Element>{-3, 2}));
  EXPECT_EQ(s.all(), (std::set<Element>{-3, 2}));
  EXPECT_EQ(s.max_rank(), universe_index(-3).rank);
}

TEST(LanguageCollection, IndexingAndPrefixes) {
  const auto c = coll_of({"I", "O"});
  EXPECT_EQ(c->at(2), lang::odd_positive());
  EXPECT_THROW(c->at(0), CollectionError);
  EXPECT_THROW(c->at(3), CollectionError);
  EXPECT_EQ(c->available(1), 1U);
  EXPECT_EQ(c->available(9), 2U);
  EXPECT_THROW(coll_of({"I", "Fin{1}"})->require_infinite_members(), CollectionError);
}

TEST(IdImpossibility, NamedMembers) {
  const auto pair = id_impossibility_collections(10);
  EXPECT_EQ(pair.true_side->at(1), lang::integers());
  EXPECT_EQ(pair.true_side->at(2), lang::odd_positive());
  EXPECT_EQ(pair.true_side->at(3), lang::q_family(1));
  EXPECT_EQ(pair.harm_side->at(1), set_union(lang::negatives(), lang::even_nonnegative()));
  EXPECT_EQ(pair.harm_side->at(2), lang::y_family(0));
  EXPECT_EQ(pair.harm_side->at(5), lang::y_family(3));
}

TEST(IdImpossibility, SafeLanguagesAreInTheTrueSide) {
  const auto pair = id_impossibility_collections(30);
  const auto& I = pair.true_side->at(1);
  EXPECT_EQ(set_difference(I, pair.harm_side->at(1)), pair.true_side->at(2));
  for (std::size_t a = 0; a <= 20; ++a) {
    EXPECT_EQ(set_difference(I, pair.harm_side->at(a + 2)), pair.true_side->at(a + 3)) << a;
  }
}

TEST(Pstar, Examples) {
  const auto pair = pstar_collections(64);
  const auto& K = *pair.true_side;
  const auto& H = *pair.harm_side;
  EXPECT_TRUE(set_difference(K.at(1), H.at(1)).cardinality().is_empty());
  const auto d = set_difference(K.at(4), H.at(4));
  EXPECT_TRUE(d.cardinality().is_infinite());
  // Brute-force scan: evens above 4 survive except the one K_4 removes.
  for (Element x = -50; x <= 200; ++x) {
    const bool expect = x > 4 && x % 2 == 0 && x != 8;
    ASSERT_EQ(d.member(x), expect) << x;
  }
  for (std::size_t j = 2; j <= 64; ++j) {
    ASSERT_TRUE(proper_subset(K.at(j), K.at(1))) << j;
    ASSERT_TRUE(proper_subset(H.at(j), H.at(1))) << j;
  }
}

TEST(Pstar, ValidatorAcceptsTheBuiltInInstance) {
  const auto pair = pstar_collections(200);
  EXPECT_EQ(validate_pstar(*pair.true_side, *pair.harm_side, 64), std::nullopt);
}

TEST(Pstar, ValidatorRejectsATopPairWithoutRefinements) {
  const auto k = coll_of({"E", "E"});
  const auto h = coll_of({"Ray(0,1)", "Ray(0,1)"});
  EXPECT_NE(validate_pstar(*k, *h, 8), std::nullopt);
}

TEST(Pstar, RefinementCoversTheSample) {
  const auto pair = pstar_collections(200);
  const std::vector<Element> tk{0, 2, 4, 6};
  const std::vector<Element> th{0, 1, 2, 3, 5};
  const auto w = pstar_refinement(*pair.true_side, *pair.harm_side, tk, th);
  ASSERT_TRUE(w.has_value());
  const auto& kj = pair.true_side->at(w->true_index);
  const auto& hj = pair.harm_side->at(w->harm_index);
  for (Element x : tk) EXPECT_TRUE(kj.member(x));
  for (Element x : th) EXPECT_TRUE(hj.member(x));
  EXPECT_TRUE(set_difference(kj, hj).cardinality().is_infinite());
}

TEST(Telltales, AngluinValidator) {
  // A proper subset of O that contains 1 makes T(O) = {1} invalid.
  auto bad = LanguageCollection::from_list("bad", {S("I"), S("O"), S("Ray(1,4)")});
  EXPECT_THROW(bad.set_telltales({{2, {1}}}), CollectionError);

  auto io = LanguageCollection::from_list("io", {S("I"), S("O")});
  EXPECT_EQ(angluin_violation(io, 1, std::vector<Element>{0}), std::nullopt);
  EXPECT_NO_THROW(io.set_telltales({{1, {0}}, {2, {1}}}));
  EXPECT_EQ(telltale_for(io, 1), (std::vector<Element>{0}));

  auto e = LanguageCollection::from_list("e", {S("E"), S("Ray(4,2)")});
  EXPECT_NO_THROW(e.set_telltales({{1, {0, 2}}}));
  EXPECT_THROW(telltale_for(e, 2), CollectionError);

  auto not_member = LanguageCollection::from_list("nm", {S("E")});
  EXPECT_THROW(not_member.set_telltales({{1, {1}}}), CollectionError);
}
