// Learners for the generation and identification games.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "safegen/collections.hpp"
#include "safegen/prefix_engine.hpp"

namespace safegen {

struct LearnerOutput {
  enum class Kind : std::uint8_t { Generate, Bottom, Index };

  Kind kind = Kind::Bottom;
  std::int64_t value = 0;

  static LearnerOutput generate(Element w) { return {Kind::Generate, w}; }
  static LearnerOutput bottom() { return {Kind::Bottom, 0}; }
  static LearnerOutput index(std::size_t i) { return {Kind::Index, static_cast<std::int64_t>(i)}; }

  bool is_generate() const { return kind == Kind::Generate; }
  bool is_bottom() const { return kind == Kind::Bottom; }
  bool is_index() const { return kind == Kind::Index; }
  std::size_t as_index() const { return static_cast<std::size_t>(value); }

  friend bool operator==(const LearnerOutput&, const LearnerOutput&) = default;
};

const char* kind_name(LearnerOutput::Kind k);
std::string to_string(const LearnerOutput& out);

/// Strict SG answers Bottom when no safe generation exists; relaxed SG must
/// name a word anyway and answers u_1 instead.
enum class SgMode { Strict, Relaxed };

LearnerOutput apply_mode(LearnerOutput out, SgMode mode);

/// Per-step key/value diagnostics a learner may expose to the trace.
using Notes = std::vector<std::pair<std::string, std::string>>;

class Learner {
 public:
  virtual ~Learner() = default;
  /// Called once per step after the adversary's example is in `s`; t = s.step().
  virtual LearnerOutput step(const RevealedSet& s) = 0;
  virtual Notes notes() const { return {}; }
};

// ---------------------------------------------------------------------------
// Generation in the limit

/// Literal (t,m)-criticality: consistent, and L_n[m] is inside L_j[m] for
/// every consistent j < n.
bool km_is_critical(const LanguageCollection& coll, const RevealedSet& s, std::size_t n,
                    std::size_t t, std::size_t m);

/// Generator over a single collection: emits an unseen member of the
/// highest-indexed (t,m)-critical language, raising m until one exists.
class KmGenerator : public Learner {
 public:
  explicit KmGenerator(std::shared_ptr<const LanguageCollection> coll, std::uint64_t m_slack = 0);
  LearnerOutput step(const RevealedSet& s) override;
  Notes notes() const override;

 private:
  std::shared_ptr<const LanguageCollection> coll_;
  ConsistencyTracker tracker_;
  PrefixCache cache_;
  std::uint64_t m_slack_;
  std::size_t last_index_ = 0;
  std::uint64_t last_m_ = 0;
};

/// One-shot form of KmGenerator::step.
LearnerOutput km_generate(const LanguageCollection& coll, const RevealedSet& s, std::size_t t);

/// What SgInfGenerator does when its search runs past the escalation bound.
enum class Exhaustion {
  Throw,        // the infinite-difference promise was violated
  Bottom,       // no promise: treat the candidate difference as unusable
  FirstUnseen,  // emit the first unseen universe element
};

/// Safe generator for the infinite-difference game: the smallest consistent
/// true candidate (KM criticality) minus the largest consistent harmful
/// candidate (dual criticality).
class SgInfGenerator : public Learner {
 public:
  SgInfGenerator(std::shared_ptr<const LanguageCollection> ktrue,
                 std::shared_ptr<const LanguageCollection> kharm, Exhaustion exhaustion,
                 SgMode mode = SgMode::Strict, std::uint64_t m_slack = 0);
  LearnerOutput step(const RevealedSet& s) override;
  Notes notes() const override;

  struct Diagnostics {
    std::optional<std::size_t> k_index;
    std::optional<std::size_t> h_index;
    CardinalityClass candidate_difference = CardinalityClass::empty();
    bool exhausted = false;
  };
  const Diagnostics& diagnostics() const { return diag_; }

 private:
  std::shared_ptr<const LanguageCollection> ktrue_;
  std::shared_ptr<const LanguageCollection> kharm_;
  ConsistencyTracker ktrack_;
  ConsistencyTracker htrack_;
  PrefixCache kcache_;
  PrefixCache hcache_;
  Exhaustion exhaustion_;
  SgMode mode_;
  std::uint64_t m_slack_;
  Diagnostics diag_;
};

/// Exact-oracle safe generator for an explicit hypothesis pair.
LearnerOutput reference_safe_generate(const EventuallyPeriodicSet& k_hyp,
                                      const EventuallyPeriodicSet& h_hyp, const RevealedSet& s,
                                      SgMode mode = SgMode::Strict);

class ReferenceLearner : public Learner {
 public:
  ReferenceLearner(EventuallyPeriodicSet k, EventuallyPeriodicSet h, SgMode mode)
      : k_(std::move(k)), h_(std::move(h)), mode_(mode) {}
  LearnerOutput step(const RevealedSet& s) override {
    return reference_safe_generate(k_, h_, s, mode_);
  }

 private:
  EventuallyPeriodicSet k_;
  EventuallyPeriodicSet h_;
  SgMode mode_;
};

class AlwaysBottom : public Learner {
 public:
  LearnerOutput step(const RevealedSet&) override { return LearnerOutput::bottom(); }
};

/// Identifies both sides through telltales and decides the difference with
/// the exact set-difference oracle. Until both sides are identified it defers
/// to a fallback generator that never answers Bottom.
class TelltaleOracleSafeGenerator : public Learner {
 public:
  TelltaleOracleSafeGenerator(std::shared_ptr<const LanguageCollection> ktrue,
                              std::shared_ptr<const LanguageCollection> kharm,
                              SgMode mode = SgMode::Strict);
  LearnerOutput step(const RevealedSet& s) override;
  Notes notes() const override;

 private:
  std::optional<std::size_t> identify(const ConsistencyTracker& tr,
                                      const std::set<Element>& side) const;

  std::shared_ptr<const LanguageCollection> ktrue_;
  std::shared_ptr<const LanguageCollection> kharm_;
  ConsistencyTracker ktrack_;
  ConsistencyTracker htrack_;
  SgInfGenerator fallback_;
  SgMode mode_;
  std::optional<std::size_t> k_hat_;
  std::optional<std::size_t> h_hat_;
};

// ---------------------------------------------------------------------------
// Identification

/// Safe-generation subroutine consulted by the probe: a hypothesis pair and a
/// finite labeled enumeration in, a word or Bottom out.
class SgSubroutine {
 public:
  virtual ~SgSubroutine() = default;
  virtual LearnerOutput generate(const EventuallyPeriodicSet& k, const EventuallyPeriodicSet& h,
                                 const RevealedSet& probe) const = 0;
};

class ReferenceSg : public SgSubroutine {
 public:
  explicit ReferenceSg(SgMode mode = SgMode::Strict) : mode_(mode) {}
  LearnerOutput generate(const EventuallyPeriodicSet& k, const EventuallyPeriodicSet& h,
                         const RevealedSet& probe) const override {
    return reference_safe_generate(k, h, probe, mode_);
  }

 private:
  SgMode mode_;
};

/// Labeled enumeration used for a probe: the first t canonical elements of k
/// (label 1) and of h (label 0), alternating k then h.
RevealedSet probe_enumeration(const EventuallyPeriodicSet& k, const EventuallyPeriodicSet& h,
                              std::size_t t);

struct ProbeBits {
  bool alpha = false;  // the subroutine found a word in M \ N
  bool beta = false;   // the subroutine found a word in N \ M

  std::string str() const { return std::string{alpha ? '1' : '0', beta ? '1' : '0'}; }
  friend bool operator==(const ProbeBits&, const ProbeBits&) = default;
};

ProbeBits subset_probe(const EventuallyPeriodicSet& m, const EventuallyPeriodicSet& n,
                       std::size_t t, const SgSubroutine& sg);

struct OrderedEntry {
  std::size_t index = 0;
  EventuallyPeriodicSet language;
};

/// Insertion sort driven by probes: entries are taken in ascending index and
/// bubble left while the probe finds a word in the left neighbour that is
/// missing from the new entry.
std::vector<OrderedEntry> order_routine(std::vector<OrderedEntry> entries, std::size_t t,
                                        const SgSubroutine& sg);

/// First pair (p, q), p < q, violating the order invariant, checked with the
/// exact subset test.
std::optional<std::pair<std::size_t, std::size_t>> order_violation(
    const std::vector<OrderedEntry>& entries);

class IdentifierFromSg : public Learner {
 public:
  IdentifierFromSg(std::shared_ptr<const LanguageCollection> coll,
                   std::shared_ptr<const SgSubroutine> sg);
  LearnerOutput step(const RevealedSet& s) override;

 private:
  std::shared_ptr<const LanguageCollection> coll_;
  std::shared_ptr<const SgSubroutine> sg_;
  ConsistencyTracker tracker_;
};

LearnerOutput naive_consistent_identify(const LanguageCollection& coll, const RevealedSet& s,
                                        std::size_t t);

class NaiveIdentifier : public Learner {
 public:
  explicit NaiveIdentifier(std::shared_ptr<const LanguageCollection> coll);
  LearnerOutput step(const RevealedSet& s) override;

 private:
  std::shared_ptr<const LanguageCollection> coll_;
  ConsistencyTracker tracker_;
};

/// Safe identifier that commits as early as possible: the first consistent
/// true candidate minus the smallest consistent harmful candidate, reported
/// as the first true-side index equal to that difference.
class EagerSafeIdentifier : public Learner {
 public:
  EagerSafeIdentifier(std::shared_ptr<const LanguageCollection> ktrue,
                      std::shared_ptr<const LanguageCollection> kharm);
  LearnerOutput step(const RevealedSet& s) override;

 private:
  std::shared_ptr<const LanguageCollection> ktrue_;
  std::shared_ptr<const LanguageCollection> kharm_;
  ConsistencyTracker ktrack_;
  ConsistencyTracker htrack_;
  PrefixCache hcache_;
};

}  // namespace safegen
