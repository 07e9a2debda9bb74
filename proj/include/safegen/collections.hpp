// Language collections, labeled examples and the revealed set S_t.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "safegen/set_algebra.hpp"

namespace safegen {

enum class Label : std::uint8_t { Harm = 0, True = 1 };

struct LabeledExample {
  Element element = 0;
  Label label = Label::True;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

/// S_t: everything the adversary has revealed so far.
class RevealedSet {
 public:
  void add(const LabeledExample& ex);

  const std::set<Element>& pos() const { return pos_; }
  const std::set<Element>& neg() const { return neg_; }
  const std::set<Element>& all() const { return all_; }
  const std::vector<LabeledExample>& stream() const { return stream_; }
  std::size_t step() const { return stream_.size(); }
  bool seen(Element x) const { return all_.count(x) != 0; }
  /// Largest universe rank among revealed elements (0 when nothing is revealed).
  std::uint64_t max_rank() const { return max_rank_; }

 private:
  std::set<Element> pos_;
  std::set<Element> neg_;
  std::set<Element> all_;
  std::vector<LabeledExample> stream_;
  std::uint64_t max_rank_ = 0;
};

enum class Side { True, Harm };

class CollectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An ordered, 1-indexed, possibly infinite family of languages. Families
/// given by a rule materialize their first `declared_prefix_len` members up
/// front; indices past that point are rejected.
class LanguageCollection {
 public:
  using Rule = std::function<EventuallyPeriodicSet(std::size_t)>;
  using Telltales = std::map<std::size_t, std::vector<Element>>;

  static LanguageCollection from_list(std::string name, std::vector<EventuallyPeriodicSet> langs);
  static LanguageCollection from_rule(std::string name, Rule rule, std::size_t declared_prefix_len);

  const std::string& name() const { return name_; }
  bool is_family() const { return is_family_; }
  /// Number of indices that can be addressed.
  std::size_t declared_prefix_len() const { return langs_.size(); }
  /// min(t, declared length): the indices a learner at step t may look at.
  std::size_t available(std::size_t t) const { return std::min(t, langs_.size()); }

  const EventuallyPeriodicSet& at(std::size_t i) const;
  std::span<const EventuallyPeriodicSet> first(std::size_t n) const;

  /// Attaches telltale sets after checking T_i is a subset of L_i and the
  /// Angluin condition against every addressable index.
  void set_telltales(Telltales telltales);
  bool has_telltales() const { return !telltales_.empty(); }
  bool has_telltale(std::size_t i) const { return telltales_.count(i) != 0; }
  const Telltales& telltales() const { return telltales_; }

  /// Rejects collections with finite members.
  void require_infinite_members() const;

 private:
  std::string name_;
  std::vector<EventuallyPeriodicSet> langs_;
  Telltales telltales_;
  bool is_family_ = false;
};

/// Returns T_i; throws CollectionError when no telltale was declared for i.
const std::vector<Element>& telltale_for(const LanguageCollection& coll, std::size_t i);

/// Explains why a telltale assignment violates the Angluin condition, or
/// nullopt when it is valid for the addressable prefix.
std::optional<std::string> angluin_violation(const LanguageCollection& coll, std::size_t i,
                                             std::span<const Element> telltale);

bool is_consistent_true(const EventuallyPeriodicSet& lang, const RevealedSet& s);
bool is_consistent_harm(const EventuallyPeriodicSet& lang, const RevealedSet& s);

/// Indices i <= t (1-based, ascending) consistent with s on the given side.
std::vector<std::size_t> consistent_indices(const LanguageCollection& coll, const RevealedSet& s,
                                            std::size_t t, Side side);

/// Incrementally tracks which of the first t languages stay consistent with a
/// growing stream; each new example is checked once against every tracked
/// language.
class ConsistencyTracker {
 public:
  ConsistencyTracker(const LanguageCollection& coll, Side side) : coll_(&coll), side_(side) {}

  void sync(const RevealedSet& s, std::size_t t);
  std::size_t tracked() const { return consistent_.size(); }
  bool consistent(std::size_t i) const { return consistent_[i - 1]; }
  std::vector<std::size_t> consistent_list() const;
  const LanguageCollection& collection() const { return *coll_; }

 private:
  bool relevant(const LabeledExample& ex) const;

  const LanguageCollection* coll_;
  Side side_;
  std::vector<bool> consistent_;
  std::size_t consumed_ = 0;
};

struct CollectionPair {
  std::shared_ptr<const LanguageCollection> true_side;
  std::shared_ptr<const LanguageCollection> harm_side;
};

/// True side: 1 -> I, 2 -> O, b + 2 -> Q(-b). Harm side: 1 -> N u E, a + 2 -> Y(-a).
CollectionPair id_impossibility_collections(std::size_t declared_prefix_len);

/// Diagonalization instance. Index 1 holds the top pair (E, naturals), whose
/// difference is empty. Index j >= 2 holds the level-j refinements
///   K_j = E \ {2j}              (proper subset of E)
///   H_j = [0, j] u {odd > j}    (proper subset of the naturals)
/// so K_j \ H_j contains every even number above j except 2j.
CollectionPair pstar_collections(std::size_t declared_prefix_len);

struct PstarWitness {
  std::size_t true_index = 0;
  std::size_t harm_index = 0;
};

/// Smallest refinement indices (j, j*) >= 2 with tk inside a proper subset
/// K_j of the top true language, th inside a proper subset H_j* of the top
/// harmful language, and K_j \ H_j* infinite.
std::optional<PstarWitness> pstar_refinement(const LanguageCollection& ktrue,
                                             const LanguageCollection& kharm,
                                             std::span<const Element> tk,
                                             std::span<const Element> th);

/// Checks the top-pair containment and, for every r <= universe_prefix, that
/// the r-prefixes of the top pair admit a refinement. Returns the first
/// failure, or nullopt.
std::optional<std::string> validate_pstar(const LanguageCollection& ktrue,
                                          const LanguageCollection& kharm,
                                          std::size_t universe_prefix = 64);

/// Every pair among the addressable prefixes has an infinite difference.
std::optional<std::string> validate_infinite_differences(const LanguageCollection& ktrue,
                                                         const LanguageCollection& kharm);

}  // namespace safegen
