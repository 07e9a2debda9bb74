#include "safegen/collections.hpp"

#include <algorithm>

#include "safegen/set_spec.hpp"

namespace safegen {

void RevealedSet::add(const LabeledExample& ex) {
  (ex.label == Label::True ? pos_ : neg_).insert(ex.element);
  all_.insert(ex.element);
  stream_.push_back(ex);
  max_rank_ = std::max(max_rank_, universe_index(ex.element).rank);
}

LanguageCollection LanguageCollection::from_list(std::string name,
                                                 std::vector<EventuallyPeriodicSet> langs) {
  LanguageCollection c;
  c.name_ = std::move(name);
  c.langs_ = std::move(langs);
  return c;
}

LanguageCollection LanguageCollection::from_rule(std::string name, Rule rule,
                                                 std::size_t declared_prefix_len) {
  LanguageCollection c;
  c.name_ = std::move(name);
  c.is_family_ = true;
  c.langs_.reserve(declared_prefix_len);
  for (std::size_t i = 1; i <= declared_prefix_len; ++i) c.langs_.push_back(rule(i));
  return c;
}

const EventuallyPeriodicSet& LanguageCollection::at(std::size_t i) const {
  if (i == 0 || i > langs_.size()) {
    throw CollectionError("collection '" + name_ + "': index " + std::to_string(i) +
                          " outside 1.." + std::to_string(langs_.size()));
  }
  return langs_[i - 1];
}

std::span<const EventuallyPeriodicSet> LanguageCollection::first(std::size_t n) const {
  return std::span<const EventuallyPeriodicSet>(langs_).first(available(n));
}

std::optional<std::string> angluin_violation(const LanguageCollection& coll, std::size_t i,
                                             std::span<const Element> telltale) {
  const auto& li = coll.at(i);
  for (Element x : telltale) {
    if (!li.member(x)) {
      return "telltale of index " + std::to_string(i) + " contains " + std::to_string(x) +
             " which is not in the language";
    }
  }
  for (std::size_t j = 1; j <= coll.declared_prefix_len(); ++j) {
    const auto& lj = coll.at(j);
    const bool covers = std::all_of(telltale.begin(), telltale.end(),
                                    [&](Element x) { return lj.member(x); });
    if (covers && proper_subset(lj, li)) {
      return "telltale of index " + std::to_string(i) + " is contained in index " +
             std::to_string(j) + " (" + describe(lj) + "), a proper subset of " + describe(li);
    }
  }
  return std::nullopt;
}

void LanguageCollection::set_telltales(Telltales telltales) {
  for (const auto& [i, t] : telltales) {
    if (auto why = angluin_violation(*this, i, t)) throw CollectionError(*why);
  }
  telltales_ = std::move(telltales);
}

void LanguageCollection::require_infinite_members() const {
  for (std::size_t i = 1; i <= langs_.size(); ++i) {
    if (!langs_[i - 1].cardinality().is_infinite()) {
      throw CollectionError("collection '" + name_ + "': index " + std::to_string(i) + " (" +
                            describe(langs_[i - 1]) + ") is not infinite");
    }
  }
}

const std::vector<Element>& telltale_for(const LanguageCollection& coll, std::size_t i) {
  const auto it = coll.telltales().find(i);
  if (it == coll.telltales().end()) {
    throw CollectionError("collection '" + coll.name() + "': no telltale for index " +
                          std::to_string(i));
  }
  return it->second;
}

bool is_consistent_true(const EventuallyPeriodicSet& lang, const RevealedSet& s) {
  return std::all_of(s.pos().begin(), s.pos().end(), [&](Element x) { return lang.member(x); });
}

bool is_consistent_harm(const EventuallyPeriodicSet& lang, const RevealedSet& s) {
  return std::all_of(s.neg().begin(), s.neg().end(), [&](Element x) { return lang.member(x); });
}

std::vector<std::size_t> consistent_indices(const LanguageCollection& coll, const RevealedSet& s,
                                            std::size_t t, Side side) {
  std::vector<std::size_t> out;
  const auto langs = coll.first(t);
  for (std::size_t i = 0; i < langs.size(); ++i) {
    const bool ok = side == Side::True ? is_consistent_true(langs[i], s)
                                       : is_consistent_harm(langs[i], s);
    if (ok) out.push_back(i + 1);
  }
  return out;
}

bool ConsistencyTracker::relevant(const LabeledExample& ex) const {
  return (side_ == Side::True) == (ex.label == Label::True);
}

void ConsistencyTracker::sync(const RevealedSet& s, std::size_t t) {
  const auto& stream = s.stream();
  // New examples against already-tracked languages.
  for (; consumed_ < stream.size(); ++consumed_) {
    const auto& ex = stream[consumed_];
    if (!relevant(ex)) continue;
    for (std::size_t i = 0; i < consistent_.size(); ++i) {
      if (consistent_[i] && !coll_->at(i + 1).member(ex.element)) consistent_[i] = false;
    }
  }
  // Newly addressable languages against the whole revealed side.
  const std::size_t n = coll_->available(t);
  const auto& side_set = side_ == Side::True ? s.pos() : s.neg();
  while (consistent_.size() < n) {
    const auto& lang = coll_->at(consistent_.size() + 1);
    consistent_.push_back(std::all_of(side_set.begin(), side_set.end(),
                                      [&](Element x) { return lang.member(x); }));
  }
}

std::vector<std::size_t> ConsistencyTracker::consistent_list() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < consistent_.size(); ++i) {
    if (consistent_[i]) out.push_back(i + 1);
  }
  return out;
}

CollectionPair id_impossibility_collections(std::size_t declared_prefix_len) {
  auto ktrue = LanguageCollection::from_rule(
      "id_impossibility_true",
      [](std::size_t i) {
        if (i == 1) return lang::integers();
        if (i == 2) return lang::odd_positive();
        return lang::q_family(static_cast<std::int64_t>(i) - 2);
      },
      declared_prefix_len);
  auto kharm = LanguageCollection::from_rule(
      "id_impossibility_harm",
      [](std::size_t i) {
        if (i == 1) return set_union(lang::negatives(), lang::even_nonnegative());
        return lang::y_family(static_cast<std::int64_t>(i) - 2);
      },
      declared_prefix_len);
  return {std::make_shared<const LanguageCollection>(std::move(ktrue)),
          std::make_shared<const LanguageCollection>(std::move(kharm))};
}

CollectionPair pstar_collections(std::size_t declared_prefix_len) {
  auto ktrue = LanguageCollection::from_rule(
      "pstar_true",
      [](std::size_t i) {
        if (i == 1) return lang::even_nonnegative();
        const Element hole = 2 * static_cast<Element>(i);
        return set_difference(lang::even_nonnegative(),
                              EventuallyPeriodicSet::finite(std::span<const Element>(&hole, 1)));
      },
      declared_prefix_len);
  auto kharm = LanguageCollection::from_rule(
      "pstar_harm",
      [](std::size_t i) {
        if (i == 1) return lang::naturals();
        const auto j = static_cast<Element>(i);
        // Evens above j are removed; everything in [0, j] and every odd stays.
        const Element first_even = j % 2 == 0 ? j + 2 : j + 1;
        return set_difference(lang::naturals(), EventuallyPeriodicSet::ray(first_even, 2));
      },
      declared_prefix_len);
  return {std::make_shared<const LanguageCollection>(std::move(ktrue)),
          std::make_shared<const LanguageCollection>(std::move(kharm))};
}

std::optional<PstarWitness> pstar_refinement(const LanguageCollection& ktrue,
                                             const LanguageCollection& kharm,
                                             std::span<const Element> tk,
                                             std::span<const Element> th) {
  const auto& top_k = ktrue.at(1);
  const auto& top_h = kharm.at(1);
  auto contains_all = [](const EventuallyPeriodicSet& s, std::span<const Element> xs) {
    return std::all_of(xs.begin(), xs.end(), [&](Element x) { return s.member(x); });
  };
  for (std::size_t j = 2; j <= ktrue.declared_prefix_len(); ++j) {
    const auto& kj = ktrue.at(j);
    if (!contains_all(kj, tk) || !proper_subset(kj, top_k)) continue;
    for (std::size_t js = 2; js <= kharm.declared_prefix_len(); ++js) {
      const auto& hj = kharm.at(js);
      if (!contains_all(hj, th) || !proper_subset(hj, top_h)) continue;
      if (set_difference(kj, hj).cardinality().is_infinite()) return PstarWitness{j, js};
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_pstar(const LanguageCollection& ktrue,
                                          const LanguageCollection& kharm,
                                          std::size_t universe_prefix) {
  const auto& top_k = ktrue.at(1);
  const auto& top_h = kharm.at(1);
  if (!subset(top_k, top_h)) return "top true language is not contained in top harmful language";
  // A refinement that covers a prefix also covers every subset of it, so the
  // full r-prefixes are the hardest finite samples of size bounded by r.
  for (std::size_t r = 1; r <= universe_prefix; ++r) {
    const auto tk = prefix(top_k, r);
    const auto th = prefix(top_h, r);
    if (!pstar_refinement(ktrue, kharm, tk, th)) {
      return "no refinement covers the first " + std::to_string(r) + " universe elements";
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_infinite_differences(const LanguageCollection& ktrue,
                                                         const LanguageCollection& kharm) {
  for (std::size_t i = 1; i <= ktrue.declared_prefix_len(); ++i) {
    for (std::size_t j = 1; j <= kharm.declared_prefix_len(); ++j) {
      if (!set_difference(ktrue.at(i), kharm.at(j)).cardinality().is_infinite()) {
        return "true index " + std::to_string(i) + " (" + describe(ktrue.at(i)) +
               ") minus harmful index " + std::to_string(j) + " (" + describe(kharm.at(j)) +
               ") is not infinite";
      }
    }
  }
  return std::nullopt;
}

}  // namespace safegen
