// Labeled-stream producers for the arena.
//
// Protocol per step t: emit(t), then the learner answers, then observe().
// committed() is the pair the adversary stands behind at the moment the
// learner answers; the arena scores against it.
#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "safegen/collections.hpp"
#include "safegen/learners.hpp"

namespace safegen {

struct LanguagePair {
  EventuallyPeriodicSet k;
  EventuallyPeriodicSet h;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual LabeledExample emit(std::size_t t) = 0;
  virtual void observe(const LearnerOutput&, const RevealedSet&) {}
  virtual LanguagePair committed() const = 0;
  /// The pair the adversary converges to if the game runs forever.
  virtual std::optional<LanguagePair> limit_pair() const { return std::nullopt; }
  virtual std::size_t phase() const { return 1; }
  virtual bool adaptive() const { return false; }
  /// Whether the most recent emission was an injected example.
  virtual bool injected() const { return false; }
  /// Collection references ("true[i]", "harm[j]") naming the committed pair,
  /// when it is a collection member; traces store these instead of set-specs.
  virtual std::optional<std::pair<std::string, std::string>> committed_refs() const {
    return std::nullopt;
  }
};

/// Positive-only enumeration of K (identification and plain generation).
class PositiveStream : public Adversary {
 public:
  explicit PositiveStream(EventuallyPeriodicSet k);
  LabeledExample emit(std::size_t t) override;
  LanguagePair committed() const override { return {k_, EventuallyPeriodicSet{}}; }

 private:
  EventuallyPeriodicSet k_;
  CanonicalEnumerator en_;
};

/// Odd steps: next element of K labeled 1. Even steps: next of H labeled 0.
class FairInterleaver : public Adversary {
 public:
  FairInterleaver(EventuallyPeriodicSet k, EventuallyPeriodicSet h);
  LabeledExample emit(std::size_t t) override;
  LanguagePair committed() const override { return {k_, h_}; }

 private:
  EventuallyPeriodicSet k_;
  EventuallyPeriodicSet h_;
  CanonicalEnumerator ken_;
  CanonicalEnumerator hen_;
};

/// Adversary against safe identification on the I / Q / Y / N u E family.
/// It enumerates T1 = universe order (label 1) interleaved with
/// T2 = 0, 2, 4, ... (label 0). In phase l, once the learner names Q(-l) it
/// injects (-l, 0) on the next step and moves to phase l + 1.
class PhasedIdAdversary : public Adversary {
 public:
  explicit PhasedIdAdversary(std::shared_ptr<const LanguageCollection> ktrue);
  LabeledExample emit(std::size_t t) override;
  void observe(const LearnerOutput& out, const RevealedSet& s) override;
  LanguagePair committed() const override;
  std::optional<LanguagePair> limit_pair() const override;
  std::size_t phase() const override { return phase_; }
  bool adaptive() const override { return true; }
  bool injected() const override { return last_injected_; }

  const std::vector<Element>& injections() const { return injections_; }

 private:
  std::shared_ptr<const LanguageCollection> ktrue_;
  std::size_t phase_ = 1;
  std::size_t cursor_ = 0;
  std::deque<LabeledExample> pending_;
  std::vector<Element> injections_;
  bool last_injected_ = false;
};

/// Diagonalizing adversary against safe generation on a collection pair with
/// a top pair (index 1) and refinements (indices >= 2).
///
/// Each phase has three subphases. A: K slots (odd steps) and H slots (even
/// steps) walk the top enumerations, emitting only members of the current
/// refinement pair and queueing the rest. A learner word inside the current
/// safe difference ends A. B: the queues are flushed. C: unless B already
/// revealed a word outside the current true refinement, K slots continue the
/// top walk up to the first such word. The next pair is the smallest
/// refinement covering everything emitted so far.
class DiagonalAdversary : public Adversary {
 public:
  DiagonalAdversary(std::shared_ptr<const LanguageCollection> ktrue,
                    std::shared_ptr<const LanguageCollection> kharm);
  LabeledExample emit(std::size_t t) override;
  void observe(const LearnerOutput& out, const RevealedSet& s) override;
  LanguagePair committed() const override;
  std::optional<LanguagePair> limit_pair() const override;
  std::size_t phase() const override { return phase_; }
  bool adaptive() const override { return true; }
  std::optional<std::pair<std::string, std::string>> committed_refs() const override;

  enum class Subphase { A, B, C };
  Subphase subphase() const { return sub_; }
  std::size_t true_index() const { return jk_; }
  std::size_t harm_index() const { return jh_; }

  struct Boundary {
    std::size_t detection_step = 0;  // step whose output ended subphase A
    std::size_t step = 0;            // last step of the phase
    std::size_t true_index = 0;      // refinement pair of the finished phase
    std::size_t harm_index = 0;
    std::uint64_t k_cursor = 0;      // top-walk universe ranks reached
    std::uint64_t h_cursor = 0;
    std::size_t k_queue = 0;         // queue sizes once B completed
    std::size_t h_queue = 0;
  };
  const std::vector<Boundary>& boundaries() const { return boundaries_; }

 private:
  Element walk(CanonicalEnumerator& en, const EventuallyPeriodicSet& keep,
               std::deque<Element>* skipped);
  void finish_phase(std::size_t t);

  std::shared_ptr<const LanguageCollection> ktrue_;
  std::shared_ptr<const LanguageCollection> kharm_;
  CanonicalEnumerator ken_;
  CanonicalEnumerator hen_;
  std::deque<Element> kskip_;
  std::deque<Element> hskip_;
  std::vector<Element> kemitted_;
  std::vector<Element> hemitted_;
  std::size_t jk_ = 0;
  std::size_t jh_ = 0;
  std::size_t phase_ = 1;
  Subphase sub_ = Subphase::A;
  bool k_contradicted_ = false;
  std::size_t step_ = 0;
  Boundary pending_;
  std::vector<Boundary> boundaries_;
};

}  // namespace safegen
