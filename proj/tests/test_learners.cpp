#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "safegen/learners.hpp"
#include "safegen/prefix_engine.hpp"
#include "test_support.hpp"

using namespace safegen;
using safegen::testing::coll_of;
using safegen::testing::revealed;
using safegen::testing::S;

namespace {

/// Generation step written straight from the criticality definition: raise m
/// from the largest seen rank; at each m take the highest critical language
/// and emit its first unseen member if one lies among u_1..u_m.
std::optional<Element> literal_km(const LanguageCollection& coll, const RevealedSet& s,
                                  std::size_t t, std::size_t max_m = 4096) {
  bool any = false;
  for (std::size_t n = 1; n <= coll.available(t); ++n) any = any || is_consistent_true(coll.at(n), s);
  if (!any) return universe_elem(UniverseIndex{1});
  for (std::size_t m = std::max<std::size_t>(1, s.max_rank()); m <= max_m; ++m) {
    std::size_t best = 0;
    for (std::size_t n = 1; n <= coll.available(t); ++n) {
      if (km_is_critical(coll, s, n, t, m)) best = n;
    }
    if (best == 0) continue;
    for (Element x : prefix(coll.at(best), m)) {
      if (!s.seen(x)) return x;
    }
  }
  return std::nullopt;
}

/// Dual criticality, literal: L_n[m] contains every earlier consistent L_j[m].
bool literal_largest(const LanguageCollection& coll, const RevealedSet& s, std::size_t n,
                     std::size_t m) {
  if (!is_consistent_harm(coll.at(n), s)) return false;
  const auto pn = prefix(coll.at(n), m);
  for (std::size_t j = 1; j < n; ++j) {
    if (!is_consistent_harm(coll.at(j), s)) continue;
    for (Element x : prefix(coll.at(j), m)) {
      if (std::find(pn.begin(), pn.end(), x) == pn.end()) return false;
    }
  }
  return true;
}

const std::vector<std::string> kPool{"I",      "O",      "E",        "N",       "N|E",
                                     "Q(-1)",  "Q(-3)",  "Y(-2)",    "Ray(0,3)", "Ray(1,3)",
                                     "O|Fin{-4,0}", "E\\Fin{6}", "I\\Fin{1}", "Ray(-1,-2)",
                                     "Ray(2,4)|Ray(-3,-4)"};

std::shared_ptr<const LanguageCollection> random_collection(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, kPool.size() - 1);
  std::vector<EventuallyPeriodicSet> langs;
  for (std::size_t i = 0; i < n; ++i) langs.push_back(S(kPool[pick(rng)]));
  return std::make_shared<const LanguageCollection>(LanguageCollection::from_list("rand", langs));
}

}  // namespace

TEST(PrefixBits, AgreeWithPrefix) {
  for (const auto& spec : kPool) {
    const auto s = S(spec);
    const Bits b = prefix_bits(s, 300);
    std::vector<Element> from_bits;
    for (std::uint64_t r = 1; r <= 300; ++r) {
      if (test_rank(b, r)) from_bits.push_back(universe_elem(UniverseIndex{r}));
    }
    ASSERT_EQ(from_bits, prefix(s, 300)) << spec;
  }
}

TEST(CriticalScan, MatchesLiteralDefinitions) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Element> pick(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_collection(rng, 6);
    RevealedSet s;
    for (int k = 0; k < 3; ++k) s.add({pick(rng), k % 2 == 0 ? Label::True : Label::Harm});
    for (auto [kind, side] : {std::pair{Criticality::Smallest, Side::True},
                              std::pair{Criticality::Largest, Side::Harm}}) {
      const auto consistent = consistent_indices(*c, s, 6, side);
      if (consistent.empty()) continue;
      PrefixCache cache(*c);
      const auto scan = scan_critical(cache, consistent, 128, kind);
      for (std::size_t m = 1; m <= 128; ++m) {
        std::size_t literal = 0;
        for (std::size_t n : consistent) {
          const bool crit = kind == Criticality::Smallest ? km_is_critical(*c, s, n, 6, m)
                                                          : literal_largest(*c, s, n, m);
          if (crit) literal = n;
        }
        ASSERT_EQ(consistent[scan.highest_critical(m)], literal) << "m=" << m;
      }
    }
  }
}

TEST(KmCritical, Examples) {
  const auto ie = coll_of({"I", "E"});
  for (std::size_t m = 1; m <= 16; ++m) {
    EXPECT_TRUE(km_is_critical(*ie, revealed({0, 2}), 2, 2, m)) << m;
    EXPECT_TRUE(km_is_critical(*ie, revealed({0, 2}), 1, 2, m)) << m;
  }
  const auto oe = coll_of({"O", "E"});
  EXPECT_FALSE(km_is_critical(*oe, revealed({}), 2, 2, 2));
}

TEST(KmGenerate, Examples) {
  EXPECT_EQ(km_generate(*coll_of({"I", "E"}), revealed({0, 2}), 2), LearnerOutput::generate(4));
  EXPECT_EQ(km_generate(*coll_of({"I"}), revealed({0}), 1), LearnerOutput::generate(1));
}

TEST(KmGenerate, MatchesLiteralReference) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_collection(rng, 5);
    const auto& K = c->at(std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    if (!K.cardinality().is_infinite()) continue;
    KmGenerator gen(c);
    CanonicalEnumerator en(K);
    RevealedSet s;
    for (std::size_t t = 1; t <= 25; ++t) {
      s.add({*en.next(), Label::True});
      const auto out = gen.step(s);
      ASSERT_TRUE(out.is_generate());
      const auto ref = literal_km(*c, s, t);
      ASSERT_TRUE(ref.has_value());
      ASSERT_EQ(out.value, *ref) << "trial " << trial << " t=" << t;
      // Without a consistent language the fallback u_1 may already be seen.
      if (!consistent_indices(*c, s, t, Side::True).empty()) ASSERT_FALSE(s.seen(out.value));
    }
  }
}

TEST(KmGenerate, ConvergesIntoTheTarget) {
  const auto c = coll_of({"I", "O", "E", "Q(-1)", "Y(0)"});
  KmGenerator gen(c);
  CanonicalEnumerator en(lang::odd_positive());
  RevealedSet s;
  std::size_t last_wrong = 0;
  for (std::size_t t = 1; t <= 300; ++t) {
    s.add({*en.next(), Label::True});
    const auto out = gen.step(s);
    ASSERT_FALSE(s.seen(out.value));
    if (!lang::odd_positive().member(out.value)) last_wrong = t;
  }
  EXPECT_LT(last_wrong, 250U);
}

TEST(SgInf, Example) {
  SgInfGenerator g(coll_of({"I", "O"}), coll_of({"E"}), Exhaustion::Throw);
  RevealedSet s;
  s.add({1, Label::True});
  s.add({0, Label::Harm});
  EXPECT_EQ(g.step(s), LearnerOutput::generate(3));
  EXPECT_EQ(g.diagnostics().k_index, 2U);
  EXPECT_EQ(g.diagnostics().h_index, 1U);
  EXPECT_TRUE(g.diagnostics().candidate_difference.is_infinite());
}

TEST(SgInf, EmptyCandidateDifferenceWithoutPromise) {
  SgInfGenerator g(coll_of({"I", "E"}), coll_of({"E", "I"}), Exhaustion::Bottom);
  RevealedSet s;
  s.add({0, Label::True});
  s.add({0, Label::Harm});
  s.add({1, Label::True});
  s.add({2, Label::Harm});
  const auto out = g.step(s);
  EXPECT_TRUE(g.diagnostics().candidate_difference.is_empty());
  EXPECT_TRUE(out.is_bottom());
}

TEST(ReferenceSafeGenerate, Examples) {
  EXPECT_EQ(reference_safe_generate(S("O"), S("E"), revealed({})), LearnerOutput::generate(1));
  EXPECT_EQ(reference_safe_generate(S("E"), S("I"), revealed({0})), LearnerOutput::bottom());
  EXPECT_EQ(reference_safe_generate(S("E"), S("I"), revealed({0}), SgMode::Relaxed),
            LearnerOutput::generate(0));
  // Finite difference: Bottom in strict mode even while unseen members remain.
  EXPECT_EQ(reference_safe_generate(S("Y(-2)"), S("E"), revealed({})), LearnerOutput::bottom());
}

TEST(SubsetProbe, FourCases) {
  const ReferenceSg sg;
  EXPECT_EQ(subset_probe(S("O"), S("I"), 8, sg).str(), "01");
  EXPECT_EQ(subset_probe(S("I"), S("O"), 8, sg).str(), "10");
  EXPECT_EQ(subset_probe(S("O"), S("Ray(1,2)"), 8, sg).str(), "00");
  EXPECT_EQ(subset_probe(S("O"), S("E"), 8, sg).str(), "11");
}

TEST(SubsetProbe, EquivalentToExactClassification) {
  // Pairs whose one-sided differences are each empty or infinite; a finite
  // nonempty difference is a legitimate Bottom for a strict subroutine.
  const ReferenceSg sg;
  std::vector<EventuallyPeriodicSet> langs;
  for (const auto& spec : kPool) langs.push_back(S(spec));
  for (std::int64_t a = 0; a <= 3; ++a) langs.push_back(lang::y_family(a));
  std::size_t checked = 0;
  for (const auto& m : langs) {
    for (const auto& n : langs) {
      const auto mn = set_difference(m, n).cardinality();
      const auto nm = set_difference(n, m).cardinality();
      if (mn.kind() == CardinalityClass::Kind::Finite || nm.kind() == CardinalityClass::Kind::Finite) continue;
      const ProbeBits expect{!mn.is_empty(), !nm.is_empty()};
      ASSERT_EQ(subset_probe(m, n, 8, sg), expect) << to_set_spec(m) << " vs " << to_set_spec(n);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100U);
}

TEST(OrderRoutine, Examples) {
  const ReferenceSg sg;
  auto out = order_routine({{1, S("I")}, {2, S("O")}}, 8, sg);
  ASSERT_EQ(out.size(), 2U);
  EXPECT_EQ(out[0].index, 2U);
  EXPECT_EQ(out[1].index, 1U);

  out = order_routine({{5, S("O")}, {2, S("O")}}, 8, sg);
  EXPECT_EQ(out[0].index, 2U);
  EXPECT_EQ(out[1].index, 5U);

  out = order_routine({{1, S("O")}, {2, S("E")}}, 8, sg);
  EXPECT_EQ(order_violation(out), std::nullopt);
}

TEST(OrderRoutine, InvariantHoldsOnRandomEntries) {
  // No pair in the pool has a finite nonempty one-sided difference, so the
  // strict probe is exact.
  const std::vector<std::string> pool{"I", "O", "E", "N", "N|E", "Q(-1)", "Ray(-2,-2)", "Ray(1,4)",
                                      "Ray(0,4)", "I\\N", "O|N"};
  const ReferenceSg sg;
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<OrderedEntry> entries;
    const std::size_t n = 2 + trial % 6;
    for (std::size_t i = 1; i <= n; ++i) entries.push_back({i, S(pool[pick(rng)])});
    const auto out = order_routine(entries, 8, sg);
    ASSERT_EQ(out.size(), n);
    ASSERT_EQ(order_violation(out), std::nullopt) << "trial " << trial;
  }
}

TEST(IdentifyFromSg, Examples) {
  IdentifierFromSg id(coll_of({"I", "O"}), std::make_shared<ReferenceSg>());
  RevealedSet s;
  s.add({1, Label::True});
  id.step(s);
  s.add({3, Label::True});
  EXPECT_EQ(id.step(s), LearnerOutput::index(2));

  IdentifierFromSg none(coll_of({"E"}), std::make_shared<ReferenceSg>());
  EXPECT_EQ(none.step(revealed({1})), LearnerOutput::index(1));
}

TEST(IdentifyFromSg, ConvergesToTheSmallestCorrectIndex) {
  const auto c = coll_of({"I", "Q(-1)", "O", "E", "O", "N|E"});
  IdentifierFromSg id(c, std::make_shared<ReferenceSg>(SgMode::Relaxed));
  CanonicalEnumerator en(lang::odd_positive());
  RevealedSet s;
  LearnerOutput out;
  for (std::size_t t = 1; t <= 60; ++t) {
    s.add({*en.next(), Label::True});
    out = id.step(s);
  }
  EXPECT_EQ(out, LearnerOutput::index(3));
}

TEST(NaiveIdentify, Examples) {
  EXPECT_EQ(naive_consistent_identify(*coll_of({"I", "O"}), revealed({1, 3, 5}), 2),
            LearnerOutput::index(1));
  EXPECT_EQ(naive_consistent_identify(*coll_of({"O", "I"}), revealed({1, 3}), 2),
            LearnerOutput::index(1));
  EXPECT_EQ(naive_consistent_identify(*coll_of({"E", "O"}), revealed({1}), 2),
            LearnerOutput::index(2));
}

TEST(TelltaleOracle, Examples) {
  auto k = std::make_shared<LanguageCollection>(LanguageCollection::from_list("k", {S("I"), S("O")}));
  k->set_telltales({{1, {0}}, {2, {1}}});
  auto h = std::make_shared<LanguageCollection>(LanguageCollection::from_list("h", {S("N|E")}));
  h->set_telltales({{1, {-1}}});
  TelltaleOracleSafeGenerator g(k, h);
  RevealedSet s;
  s.add({0, Label::True});
  s.add({-1, Label::Harm});
  const auto out = g.step(s);
  ASSERT_TRUE(out.is_generate());
  EXPECT_TRUE(lang::odd_positive().member(out.value));

  auto ke = std::make_shared<LanguageCollection>(LanguageCollection::from_list("k", {S("E")}));
  ke->set_telltales({{1, {0}}});
  auto hi = std::make_shared<LanguageCollection>(LanguageCollection::from_list("h", {S("I")}));
  hi->set_telltales({{1, {0}}});
  TelltaleOracleSafeGenerator b(ke, hi);
  RevealedSet s2;
  s2.add({0, Label::True});
  s2.add({0, Label::Harm});
  EXPECT_TRUE(b.step(s2).is_bottom());

  // Telltale not yet revealed: the fallback answers with a word.
  TelltaleOracleSafeGenerator f(ke, hi);
  EXPECT_TRUE(f.step(revealed({2})).is_generate());
}

TEST(EscalationBound, CoversLatePeriodicMembers) {
  const auto far = S("Ray(500,1)");
  const EventuallyPeriodicSet* langs[] = {&far};
  EXPECT_GE(escalation_bound(langs, 0), universe_index(500).rank);
}
