#include "safegen/adversaries.hpp"

#include <stdexcept>

namespace safegen {

namespace {

Element next_of(CanonicalEnumerator& en, const char* who) {
  auto x = en.next();
  if (!x) throw std::runtime_error(std::string(who) + ": enumerated language ran out of elements");
  return *x;
}

}  // namespace

PositiveStream::PositiveStream(EventuallyPeriodicSet k) : k_(std::move(k)), en_(k_) {}

LabeledExample PositiveStream::emit(std::size_t) {
  return {next_of(en_, "positive stream"), Label::True};
}

FairInterleaver::FairInterleaver(EventuallyPeriodicSet k, EventuallyPeriodicSet h)
    : k_(std::move(k)), h_(std::move(h)), ken_(k_), hen_(h_) {}

LabeledExample FairInterleaver::emit(std::size_t t) {
  if (t % 2 == 1) return {next_of(ken_, "fair interleaver"), Label::True};
  return {next_of(hen_, "fair interleaver"), Label::Harm};
}

PhasedIdAdversary::PhasedIdAdversary(std::shared_ptr<const LanguageCollection> ktrue)
    : ktrue_(std::move(ktrue)) {}

LabeledExample PhasedIdAdversary::emit(std::size_t) {
  last_injected_ = !pending_.empty();
  if (last_injected_) {
    const auto ex = pending_.front();
    pending_.pop_front();
    return ex;
  }
  ++cursor_;
  const auto k = static_cast<std::uint64_t>((cursor_ + 1) / 2);
  if (cursor_ % 2 == 1) return {universe_elem(UniverseIndex{k}), Label::True};
  return {2 * static_cast<Element>(k - 1), Label::Harm};
}

void PhasedIdAdversary::observe(const LearnerOutput& out, const RevealedSet&) {
  if (!out.is_index() || out.value < 1 ||
      out.as_index() > ktrue_->declared_prefix_len()) {
    return;
  }
  const auto l = static_cast<std::int64_t>(phase_);
  if (ktrue_->at(out.as_index()) == lang::q_family(l)) {
    pending_.push_back({-l, Label::Harm});
    injections_.push_back(-l);
    ++phase_;
  }
}

LanguagePair PhasedIdAdversary::committed() const {
  return {lang::integers(), lang::y_family(static_cast<std::int64_t>(phase_) - 1)};
}

std::optional<LanguagePair> PhasedIdAdversary::limit_pair() const {
  return LanguagePair{lang::integers(), set_union(lang::negatives(), lang::even_nonnegative())};
}

DiagonalAdversary::DiagonalAdversary(std::shared_ptr<const LanguageCollection> ktrue,
                                     std::shared_ptr<const LanguageCollection> kharm)
    : ktrue_(std::move(ktrue)),
      kharm_(std::move(kharm)),
      ken_(ktrue_->at(1)),
      hen_(kharm_->at(1)) {
  if (auto why = validate_pstar(*ktrue_, *kharm_)) {
    throw CollectionError("diagonal adversary: collections fail the refinement property: " + *why);
  }
  const auto w = pstar_refinement(*ktrue_, *kharm_, {}, {});
  jk_ = w->true_index;
  jh_ = w->harm_index;
}

Element DiagonalAdversary::walk(CanonicalEnumerator& en, const EventuallyPeriodicSet& keep,
                                std::deque<Element>* skipped) {
  for (;;) {
    const Element x = next_of(en, "diagonal adversary");
    if (!skipped || keep.member(x)) return x;
    skipped->push_back(x);
  }
}

LabeledExample DiagonalAdversary::emit(std::size_t t) {
  step_ = t;
  const bool kslot = t % 2 == 1;
  auto& en = kslot ? ken_ : hen_;
  auto& skip = kslot ? kskip_ : hskip_;
  const auto& top = kslot ? ktrue_->at(1) : kharm_->at(1);
  const auto& cur = kslot ? ktrue_->at(jk_) : kharm_->at(jh_);

  Element x = 0;
  bool close_phase = false;
  switch (sub_) {
    case Subphase::A:
      x = walk(en, cur, &skip);
      break;
    case Subphase::B:
      if (!skip.empty()) {
        x = skip.front();
        skip.pop_front();
        if (kslot) k_contradicted_ = true;
      } else {
        x = walk(en, top, nullptr);
      }
      if (kskip_.empty() && hskip_.empty()) {
        pending_.k_queue = kskip_.size();
        pending_.h_queue = hskip_.size();
        sub_ = Subphase::C;
        close_phase = k_contradicted_;
      }
      break;
    case Subphase::C:
      x = walk(en, top, nullptr);
      close_phase = kslot && !cur.member(x);
      break;
  }
  (kslot ? kemitted_ : hemitted_).push_back(x);
  if (close_phase) finish_phase(t);
  return {x, kslot ? Label::True : Label::Harm};
}

void DiagonalAdversary::observe(const LearnerOutput& out, const RevealedSet&) {
  if (sub_ != Subphase::A || !out.is_generate()) return;
  if (!ktrue_->at(jk_).member(out.value) || kharm_->at(jh_).member(out.value)) return;
  pending_ = Boundary{};
  pending_.detection_step = step_;
  sub_ = Subphase::B;
  if (kskip_.empty() && hskip_.empty()) sub_ = Subphase::C;
}

void DiagonalAdversary::finish_phase(std::size_t t) {
  pending_.step = t;
  pending_.true_index = jk_;
  pending_.harm_index = jh_;
  pending_.k_cursor = ken_.last_rank();
  pending_.h_cursor = hen_.last_rank();
  boundaries_.push_back(pending_);

  const auto w = pstar_refinement(*ktrue_, *kharm_, kemitted_, hemitted_);
  if (!w) {
    throw CollectionError("diagonal adversary: no refinement within the declared prefix covers " +
                          std::to_string(kemitted_.size() + hemitted_.size()) +
                          " emitted elements; raise prefix_len");
  }
  jk_ = w->true_index;
  jh_ = w->harm_index;
  ++phase_;
  sub_ = Subphase::A;
  k_contradicted_ = false;
}

LanguagePair DiagonalAdversary::committed() const {
  if (sub_ == Subphase::A) return {ktrue_->at(jk_), kharm_->at(jh_)};
  return {ktrue_->at(1), kharm_->at(1)};
}

std::optional<std::pair<std::string, std::string>> DiagonalAdversary::committed_refs() const {
  const std::size_t k = sub_ == Subphase::A ? jk_ : 1;
  const std::size_t h = sub_ == Subphase::A ? jh_ : 1;
  return std::pair{"true[" + std::to_string(k) + "]", "harm[" + std::to_string(h) + "]"};
}

std::optional<LanguagePair> DiagonalAdversary::limit_pair() const {
  return LanguagePair{ktrue_->at(1), kharm_->at(1)};
}

}  // namespace safegen
