#include "safegen/learners.hpp"

#include <algorithm>
#include <bit>

namespace safegen {

const char* kind_name(LearnerOutput::Kind k) {
  switch (k) {
    case LearnerOutput::Kind::Generate: return "generate";
    case LearnerOutput::Kind::Bottom: return "bottom";
    case LearnerOutput::Kind::Index: return "index";
  }
  return "?";
}

std::string to_string(const LearnerOutput& out) {
  if (out.is_bottom()) return "bottom";
  return std::string(kind_name(out.kind)) + "(" + std::to_string(out.value) + ")";
}

LearnerOutput apply_mode(LearnerOutput out, SgMode mode) {
  if (mode == SgMode::Relaxed && out.is_bottom()) {
    return LearnerOutput::generate(universe_elem(UniverseIndex{1}));
  }
  return out;
}

namespace {

/// First rank r <= ranks set in a, clear in b (if given) and clear in seen.
std::uint64_t first_unseen(const Bits& a, const Bits* b, const Bits& seen, std::uint64_t ranks) {
  const std::size_t words = (ranks + 63) / 64;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t v = w < a.size() ? a[w] : 0;
    if (b && w < b->size()) v &= ~(*b)[w];
    if (w < seen.size()) v &= ~seen[w];
    if (v != 0) {
      const std::uint64_t r = w * 64 + static_cast<std::uint64_t>(std::countr_zero(v)) + 1;
      return r <= ranks ? r : kNeverViolated;
    }
  }
  return kNeverViolated;
}

Element first_unseen_universe(const RevealedSet& s) {
  std::uint64_t r = 1;
  while (s.seen(universe_elem(UniverseIndex{r}))) ++r;
  return universe_elem(UniverseIndex{r});
}

std::vector<const EventuallyPeriodicSet*> members_of(const LanguageCollection& coll,
                                                     const std::vector<std::size_t>& idx) {
  std::vector<const EventuallyPeriodicSet*> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(&coll.at(i));
  return out;
}

std::uint64_t initial_ranks(std::uint64_t m0, std::uint64_t bound) {
  return std::min(bound, std::max(m0 + 64, 2 * m0));
}

/// Walks a criticality pointer down as m grows; critical sets only shrink.
void retreat(const CriticalScan& scan, std::size_t& pos, std::uint64_t m) {
  while (pos > 0 && scan.delta[pos] <= m) --pos;
}

}  // namespace

bool km_is_critical(const LanguageCollection& coll, const RevealedSet& s, std::size_t n,
                    std::size_t t, std::size_t m) {
  if (n == 0 || n > coll.available(t) || !is_consistent_true(coll.at(n), s)) return false;
  const auto pn = prefix(coll.at(n), m);
  for (std::size_t j = 1; j < n; ++j) {
    if (!is_consistent_true(coll.at(j), s)) continue;
    const auto pj = prefix(coll.at(j), m);
    for (Element x : pn) {
      if (std::find(pj.begin(), pj.end(), x) == pj.end()) return false;
    }
  }
  return true;
}

KmGenerator::KmGenerator(std::shared_ptr<const LanguageCollection> coll, std::uint64_t m_slack)
    : coll_(std::move(coll)), tracker_(*coll_, Side::True), cache_(*coll_), m_slack_(m_slack) {}

LearnerOutput KmGenerator::step(const RevealedSet& s) {
  const std::size_t t = s.step();
  tracker_.sync(s, t);
  const auto consistent = tracker_.consistent_list();
  if (consistent.empty()) {
    last_index_ = 0;
    return LearnerOutput::generate(universe_elem(UniverseIndex{1}));
  }
  const auto langs = members_of(*coll_, consistent);
  const std::uint64_t m0 = std::max<std::uint64_t>(1, s.max_rank());
  const std::uint64_t bound = escalation_bound(langs, s.max_rank(), m_slack_);
  const Bits seen = seen_bits(s);

  for (std::uint64_t ranks = initial_ranks(m0, bound);; ranks = std::min(bound, 2 * ranks)) {
    const auto scan = scan_critical(cache_, consistent, ranks, Criticality::Smallest);
    std::size_t pos = scan.highest_critical(m0);
    std::uint64_t f = first_unseen(cache_.bits(consistent[pos], ranks), nullptr, seen, ranks);
    for (std::uint64_t m = m0; m <= ranks; ++m) {
      const std::size_t before = pos;
      retreat(scan, pos, m);
      if (pos != before) f = first_unseen(cache_.bits(consistent[pos], ranks), nullptr, seen, ranks);
      if (f <= m) {
        last_index_ = consistent[pos];
        last_m_ = m;
        return LearnerOutput::generate(universe_elem(UniverseIndex{f}));
      }
    }
    if (ranks >= bound) break;
  }
  throw EscalationError("km: no unseen element below rank " + std::to_string(bound) +
                        " at step " + std::to_string(t));
}

Notes KmGenerator::notes() const {
  if (last_index_ == 0) return {{"critical", "none"}};
  return {{"critical", std::to_string(last_index_)}, {"m", std::to_string(last_m_)}};
}

LearnerOutput km_generate(const LanguageCollection& coll, const RevealedSet& s, std::size_t t) {
  // Restrict the collection to its first t members; the generator reads t from s.
  std::vector<EventuallyPeriodicSet> head;
  for (const auto& l : coll.first(t)) head.push_back(l);
  auto view = std::make_shared<const LanguageCollection>(
      LanguageCollection::from_list(coll.name(), std::move(head)));
  KmGenerator gen(view);
  return gen.step(s);
}

SgInfGenerator::SgInfGenerator(std::shared_ptr<const LanguageCollection> ktrue,
                               std::shared_ptr<const LanguageCollection> kharm,
                               Exhaustion exhaustion, SgMode mode, std::uint64_t m_slack)
    : ktrue_(std::move(ktrue)),
      kharm_(std::move(kharm)),
      ktrack_(*ktrue_, Side::True),
      htrack_(*kharm_, Side::Harm),
      kcache_(*ktrue_),
      hcache_(*kharm_),
      exhaustion_(exhaustion),
      mode_(mode),
      m_slack_(m_slack) {}

LearnerOutput SgInfGenerator::step(const RevealedSet& s) {
  const std::size_t t = s.step();
  ktrack_.sync(s, t);
  htrack_.sync(s, t);
  const auto kc = ktrack_.consistent_list();
  const auto hc = htrack_.consistent_list();
  diag_ = Diagnostics{};
  if (kc.empty()) return LearnerOutput::generate(universe_elem(UniverseIndex{1}));

  auto langs = members_of(*ktrue_, kc);
  for (const auto* l : members_of(*kharm_, hc)) langs.push_back(l);
  const std::uint64_t m0 = std::max<std::uint64_t>(1, s.max_rank());
  const std::uint64_t bound = escalation_bound(langs, s.max_rank(), m_slack_);
  const Bits seen = seen_bits(s);
  static const Bits kNoHarm;

  std::size_t kpos = 0;
  std::size_t hpos = 0;
  for (std::uint64_t ranks = initial_ranks(m0, bound);; ranks = std::min(bound, 2 * ranks)) {
    const auto kscan = scan_critical(kcache_, kc, ranks, Criticality::Smallest);
    const auto hscan = scan_critical(hcache_, hc, ranks, Criticality::Largest);
    kpos = kscan.highest_critical(m0);
    hpos = hc.empty() ? 0 : hscan.highest_critical(m0);
    auto candidate = [&] {
      const Bits& hb = hc.empty() ? kNoHarm : hcache_.bits(hc[hpos], ranks);
      return first_unseen(kcache_.bits(kc[kpos], ranks), &hb, seen, ranks);
    };
    std::uint64_t f = candidate();
    for (std::uint64_t m = m0; m <= ranks; ++m) {
      const std::size_t kb = kpos;
      const std::size_t hb = hpos;
      retreat(kscan, kpos, m);
      if (!hc.empty()) retreat(hscan, hpos, m);
      if (kpos != kb || hpos != hb) f = candidate();
      if (f <= m) {
        diag_.k_index = kc[kpos];
        if (!hc.empty()) diag_.h_index = hc[hpos];
        diag_.candidate_difference =
            hc.empty() ? ktrue_->at(kc[kpos]).cardinality()
                       : set_difference(ktrue_->at(kc[kpos]), kharm_->at(hc[hpos])).cardinality();
        return LearnerOutput::generate(universe_elem(UniverseIndex{f}));
      }
    }
    if (ranks >= bound) break;
  }

  diag_.k_index = kc[kpos];
  if (!hc.empty()) diag_.h_index = hc[hpos];
  diag_.candidate_difference =
      hc.empty() ? ktrue_->at(kc[kpos]).cardinality()
                 : set_difference(ktrue_->at(kc[kpos]), kharm_->at(hc[hpos])).cardinality();
  diag_.exhausted = true;
  switch (exhaustion_) {
    case Exhaustion::Throw:
      throw EscalationError("sg_inf: candidate difference has no unseen element below rank " +
                            std::to_string(bound) + " at step " + std::to_string(t) +
                            "; the infinite-difference promise does not hold");
    case Exhaustion::Bottom: return apply_mode(LearnerOutput::bottom(), mode_);
    case Exhaustion::FirstUnseen: return LearnerOutput::generate(first_unseen_universe(s));
  }
  return LearnerOutput::bottom();
}

Notes SgInfGenerator::notes() const {
  auto idx = [](const std::optional<std::size_t>& i) { return i ? std::to_string(*i) : "none"; };
  return {{"k_c", idx(diag_.k_index)},
          {"h_c", idx(diag_.h_index)},
          {"kc_minus_hc", diag_.candidate_difference.to_string()},
          {"exhausted", diag_.exhausted ? "true" : "false"}};
}

LearnerOutput reference_safe_generate(const EventuallyPeriodicSet& k_hyp,
                                      const EventuallyPeriodicSet& h_hyp, const RevealedSet& s,
                                      SgMode mode) {
  const auto diff = set_difference(k_hyp, h_hyp);
  if (!diff.cardinality().is_infinite()) return apply_mode(LearnerOutput::bottom(), mode);
  CanonicalEnumerator en(diff);
  for (;;) {
    const Element x = *en.next();
    if (!s.seen(x)) return LearnerOutput::generate(x);
  }
}

TelltaleOracleSafeGenerator::TelltaleOracleSafeGenerator(
    std::shared_ptr<const LanguageCollection> ktrue,
    std::shared_ptr<const LanguageCollection> kharm, SgMode mode)
    : ktrue_(std::move(ktrue)),
      kharm_(std::move(kharm)),
      ktrack_(*ktrue_, Side::True),
      htrack_(*kharm_, Side::Harm),
      fallback_(ktrue_, kharm_, Exhaustion::FirstUnseen),
      mode_(mode) {}

std::optional<std::size_t> TelltaleOracleSafeGenerator::identify(
    const ConsistencyTracker& tr, const std::set<Element>& side) const {
  const auto& coll = tr.collection();
  for (std::size_t i : tr.consistent_list()) {
    if (!coll.has_telltale(i)) continue;
    const auto& tt = telltale_for(coll, i);
    if (std::all_of(tt.begin(), tt.end(), [&](Element x) { return side.count(x) != 0; })) return i;
  }
  return std::nullopt;
}

LearnerOutput TelltaleOracleSafeGenerator::step(const RevealedSet& s) {
  const std::size_t t = s.step();
  ktrack_.sync(s, t);
  htrack_.sync(s, t);
  k_hat_ = identify(ktrack_, s.pos());
  h_hat_ = identify(htrack_, s.neg());
  if (k_hat_ && h_hat_) {
    return reference_safe_generate(ktrue_->at(*k_hat_), kharm_->at(*h_hat_), s, mode_);
  }
  auto out = fallback_.step(s);
  if (out.is_bottom()) out = LearnerOutput::generate(first_unseen_universe(s));
  return out;
}

Notes TelltaleOracleSafeGenerator::notes() const {
  auto idx = [](const std::optional<std::size_t>& i) { return i ? std::to_string(*i) : "none"; };
  return {{"k_hat", idx(k_hat_)}, {"h_hat", idx(h_hat_)}};
}

RevealedSet probe_enumeration(const EventuallyPeriodicSet& k, const EventuallyPeriodicSet& h,
                              std::size_t t) {
  const auto ks = enumerate_first(k, t);
  const auto hs = enumerate_first(h, t);
  RevealedSet out;
  for (std::size_t i = 0; i < std::max(ks.size(), hs.size()); ++i) {
    if (i < ks.size()) out.add({ks[i], Label::True});
    if (i < hs.size()) out.add({hs[i], Label::Harm});
  }
  return out;
}

ProbeBits subset_probe(const EventuallyPeriodicSet& m, const EventuallyPeriodicSet& n,
                       std::size_t t, const SgSubroutine& sg) {
  auto found = [&](const EventuallyPeriodicSet& k, const EventuallyPeriodicSet& h) {
    const auto out = sg.generate(k, h, probe_enumeration(k, h, t));
    return out.is_generate() && k.member(out.value) && !h.member(out.value);
  };
  return {found(m, n), found(n, m)};
}

std::vector<OrderedEntry> order_routine(std::vector<OrderedEntry> entries, std::size_t t,
                                        const SgSubroutine& sg) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const OrderedEntry& a, const OrderedEntry& b) { return a.index < b.index; });
  std::vector<OrderedEntry> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    out.push_back(std::move(e));
    for (std::size_t j = out.size() - 1; j > 0; --j) {
      if (!subset_probe(out[j - 1].language, out[j].language, t, sg).alpha) break;
      std::swap(out[j - 1], out[j]);
    }
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> order_violation(
    const std::vector<OrderedEntry>& entries) {
  for (std::size_t p = 0; p < entries.size(); ++p) {
    for (std::size_t q = p + 1; q < entries.size(); ++q) {
      const auto& lp = entries[p].language;
      const auto& lq = entries[q].language;
      if (proper_subset(lq, lp)) return std::pair{p, q};
      if (lp == lq && entries[p].index > entries[q].index) return std::pair{p, q};
    }
  }
  return std::nullopt;
}

IdentifierFromSg::IdentifierFromSg(std::shared_ptr<const LanguageCollection> coll,
                                   std::shared_ptr<const SgSubroutine> sg)
    : coll_(std::move(coll)), sg_(std::move(sg)), tracker_(*coll_, Side::True) {}

LearnerOutput IdentifierFromSg::step(const RevealedSet& s) {
  const std::size_t t = s.step();
  tracker_.sync(s, t);
  std::vector<OrderedEntry> entries;
  for (std::size_t i : tracker_.consistent_list()) entries.push_back({i, coll_->at(i)});
  if (entries.empty()) return LearnerOutput::index(1);
  return LearnerOutput::index(order_routine(std::move(entries), t, *sg_).front().index);
}

LearnerOutput naive_consistent_identify(const LanguageCollection& coll, const RevealedSet& s,
                                        std::size_t t) {
  const auto c = consistent_indices(coll, s, t, Side::True);
  return LearnerOutput::index(c.empty() ? 1 : c.front());
}

NaiveIdentifier::NaiveIdentifier(std::shared_ptr<const LanguageCollection> coll)
    : coll_(std::move(coll)), tracker_(*coll_, Side::True) {}

LearnerOutput NaiveIdentifier::step(const RevealedSet& s) {
  tracker_.sync(s, s.step());
  for (std::size_t i = 1; i <= tracker_.tracked(); ++i) {
    if (tracker_.consistent(i)) return LearnerOutput::index(i);
  }
  return LearnerOutput::index(1);
}

EagerSafeIdentifier::EagerSafeIdentifier(std::shared_ptr<const LanguageCollection> ktrue,
                                         std::shared_ptr<const LanguageCollection> kharm)
    : ktrue_(std::move(ktrue)),
      kharm_(std::move(kharm)),
      ktrack_(*ktrue_, Side::True),
      htrack_(*kharm_, Side::Harm),
      hcache_(*kharm_) {}

LearnerOutput EagerSafeIdentifier::step(const RevealedSet& s) {
  const std::size_t t = s.step();
  ktrack_.sync(s, t);
  htrack_.sync(s, t);
  const auto kc = ktrack_.consistent_list();
  const auto hc = htrack_.consistent_list();
  if (kc.empty()) return LearnerOutput::index(1);

  EventuallyPeriodicSet h_hat;
  if (!hc.empty()) {
    const std::uint64_t bound = escalation_bound(members_of(*kharm_, hc), s.max_rank());
    const auto scan = scan_critical(hcache_, hc, bound, Criticality::Smallest);
    h_hat = kharm_->at(hc[scan.highest_critical(bound)]);
  }
  const auto target = set_difference(ktrue_->at(kc.front()), h_hat);
  for (std::size_t i = 1; i <= ktrue_->available(t); ++i) {
    if (ktrue_->at(i) == target) return LearnerOutput::index(i);
  }
  return LearnerOutput::index(kc.front());
}

}  // namespace safegen
