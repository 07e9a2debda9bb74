#include "safegen/set_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace safegen {

ResidueClasses::ResidueClasses(std::int64_t period, std::vector<bool> mask)
    : period_(period), mask_(std::move(mask)) {
  if (period_ < 1 || mask_.size() != static_cast<std::size_t>(period_)) {
    throw std::invalid_argument("ResidueClasses: mask size must equal a positive period");
  }
}

ResidueClasses ResidueClasses::single(std::int64_t period, std::int64_t residue) {
  std::vector<bool> mask(static_cast<std::size_t>(period), false);
  mask[static_cast<std::size_t>(floor_mod(residue, period))] = true;
  return ResidueClasses(period, std::move(mask));
}

bool ResidueClasses::empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

std::size_t ResidueClasses::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<std::int64_t> ResidueClasses::residues() const {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < period_; ++r) {
    if (mask_[static_cast<std::size_t>(r)]) out.push_back(r);
  }
  return out;
}

ResidueClasses ResidueClasses::minimized() const {
  for (std::int64_t p = 1; p < period_; ++p) {
    if (period_ % p != 0) continue;
    bool periodic = true;
    for (std::int64_t r = p; r < period_ && periodic; ++r) {
      periodic = mask_[static_cast<std::size_t>(r)] == mask_[static_cast<std::size_t>(r % p)];
    }
    if (periodic) {
      return ResidueClasses(p, std::vector<bool>(mask_.begin(), mask_.begin() + p));
    }
  }
  return *this;
}

ResidueClasses ResidueClasses::refined(std::int64_t period) const {
  if (period % period_ != 0) {
    throw std::invalid_argument("ResidueClasses::refined: period must be a multiple");
  }
  std::vector<bool> mask(static_cast<std::size_t>(period));
  for (std::int64_t r = 0; r < period; ++r) mask[static_cast<std::size_t>(r)] = contains(r);
  return ResidueClasses(period, std::move(mask));
}

std::string CardinalityClass::to_string() const {
  switch (kind_) {
    case Kind::Empty: return "Empty";
    case Kind::Infinite: return "Infinite";
    case Kind::Finite: return "Finite(" + std::to_string(count_) + ")";
  }
  return "?";
}

EventuallyPeriodicSet::EventuallyPeriodicSet() = default;

EventuallyPeriodicSet EventuallyPeriodicSet::from_parts(ResidueClasses left, std::int64_t lo,
                                                        std::int64_t hi, std::vector<bool> window,
                                                        ResidueClasses right) {
  if (hi < lo - 1 || window.size() != static_cast<std::size_t>(hi - lo + 1)) {
    throw std::invalid_argument("EventuallyPeriodicSet: window does not match [lo, hi]");
  }
  auto raw = [&](std::int64_t x) {
    if (x < lo) return left.contains(x);
    if (x > hi) return right.contains(x);
    return static_cast<bool>(window[static_cast<std::size_t>(x - lo)]);
  };

  const ResidueClasses lmin = left.minimized();
  const ResidueClasses rmin = right.minimized();
  const std::int64_t span = std::lcm(lmin.period(), rmin.period());

  // Canonical hi: the last point that disagrees with the right-tail rule.
  std::optional<std::int64_t> last_off_right;
  for (std::int64_t x = hi; x >= lo - span; --x) {
    if (raw(x) != rmin.contains(x)) {
      last_off_right = x;
      break;
    }
  }

  EventuallyPeriodicSet out;
  if (!last_off_right) {
    // Purely periodic: both tails carry the same rule.
    out.left_ = rmin;
    out.right_ = rmin;
    return out;
  }

  // Canonical lo: the first point that disagrees with the left-tail rule,
  // clamped so the window never overlaps the right tail.
  std::int64_t first_off_left = *last_off_right + 1;
  for (std::int64_t x = lo; x <= hi + span; ++x) {
    if (raw(x) != lmin.contains(x)) {
      first_off_left = x;
      break;
    }
  }

  out.left_ = lmin;
  out.right_ = rmin;
  out.hi_ = *last_off_right;
  out.lo_ = std::min(first_off_left, out.hi_ + 1);
  out.window_.resize(static_cast<std::size_t>(out.hi_ - out.lo_ + 1));
  for (std::int64_t x = out.lo_; x <= out.hi_; ++x) {
    out.window_[static_cast<std::size_t>(x - out.lo_)] = raw(x);
  }
  return out;
}

EventuallyPeriodicSet EventuallyPeriodicSet::all_integers() {
  return from_parts(ResidueClasses::all(), 0, -1, {}, ResidueClasses::all());
}

EventuallyPeriodicSet EventuallyPeriodicSet::ray(Element start, std::int64_t step) {
  if (step == 0) throw std::invalid_argument("ray: step must be nonzero");
  if (step > 0) {
    return from_parts(ResidueClasses::none(), start, start - 1, {},
                      ResidueClasses::single(step, start));
  }
  return from_parts(ResidueClasses::single(-step, start), start + 1, start, {},
                    ResidueClasses::none());
}

EventuallyPeriodicSet EventuallyPeriodicSet::finite(std::span<const Element> members) {
  if (members.empty()) return {};
  const auto [mn, mx] = std::minmax_element(members.begin(), members.end());
  std::vector<bool> window(static_cast<std::size_t>(*mx - *mn + 1), false);
  for (Element x : members) window[static_cast<std::size_t>(x - *mn)] = true;
  return from_parts(ResidueClasses::none(), *mn, *mx, std::move(window), ResidueClasses::none());
}

EventuallyPeriodicSet EventuallyPeriodicSet::interval(Element lo, Element hi) {
  if (hi < lo) return {};
  return from_parts(ResidueClasses::none(), lo, hi,
                    std::vector<bool>(static_cast<std::size_t>(hi - lo + 1), true),
                    ResidueClasses::none());
}

CardinalityClass EventuallyPeriodicSet::cardinality() const {
  if (!left_.empty() || !right_.empty()) return CardinalityClass::infinite();
  return CardinalityClass::finite(
      static_cast<std::size_t>(std::count(window_.begin(), window_.end(), true)));
}

std::vector<Element> EventuallyPeriodicSet::window_members() const {
  std::vector<Element> out;
  for (std::int64_t x = lo_; x <= hi_; ++x) {
    if (window_[static_cast<std::size_t>(x - lo_)]) out.push_back(x);
  }
  return out;
}

std::int64_t EventuallyPeriodicSet::extent() const {
  return std::max(std::abs(lo_), std::abs(hi_));
}

std::int64_t EventuallyPeriodicSet::max_period() const {
  return std::max(left_.period(), right_.period());
}

namespace {

template <typename Op>
EventuallyPeriodicSet combine(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b,
                              Op op) {
  auto tail = [&](const ResidueClasses& x, const ResidueClasses& y) {
    const std::int64_t p = std::lcm(x.period(), y.period());
    std::vector<bool> mask(static_cast<std::size_t>(p));
    for (std::int64_t r = 0; r < p; ++r) {
      mask[static_cast<std::size_t>(r)] = op(x.contains(r), y.contains(r));
    }
    return ResidueClasses(p, std::move(mask));
  };
  const std::int64_t lo = std::min(a.lo(), b.lo());
  const std::int64_t hi = std::max(a.hi(), b.hi());
  std::vector<bool> window(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t x = lo; x <= hi; ++x) {
    window[static_cast<std::size_t>(x - lo)] = op(a.member(x), b.member(x));
  }
  return EventuallyPeriodicSet::from_parts(tail(a.left(), b.left()), lo, hi, std::move(window),
                                           tail(a.right(), b.right()));
}

}  // namespace

EventuallyPeriodicSet set_union(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

EventuallyPeriodicSet set_intersect(const EventuallyPeriodicSet& a,
                                    const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

EventuallyPeriodicSet set_difference(const EventuallyPeriodicSet& a,
                                     const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

EventuallyPeriodicSet set_complement(const EventuallyPeriodicSet& a) {
  return combine(a, a, [](bool x, bool) { return !x; });
}

bool subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return set_difference(a, b).is_empty();
}

bool proper_subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return subset(a, b) && !(a == b);
}

std::vector<Element> prefix(const EventuallyPeriodicSet& s, std::size_t m) {
  std::vector<Element> out;
  for (std::uint64_t r = 1; r <= m; ++r) {
    const Element x = universe_elem(UniverseIndex{r});
    if (s.member(x)) out.push_back(x);
  }
  return out;
}

CanonicalEnumerator::CanonicalEnumerator(EventuallyPeriodicSet s) : set_(std::move(s)) {
  if (!set_.cardinality().is_infinite()) {
    std::uint64_t last = 0;
    for (Element x : set_.window_members()) last = std::max(last, universe_index(x).rank);
    stop_rank_ = last;
  }
}

std::optional<Element> CanonicalEnumerator::next() {
  while (!stop_rank_ || rank_ < *stop_rank_) {
    ++rank_;
    const Element x = universe_elem(UniverseIndex{rank_});
    if (set_.member(x)) return x;
  }
  return std::nullopt;
}

std::vector<Element> enumerate_first(const EventuallyPeriodicSet& s, std::size_t n) {
  CanonicalEnumerator en(s);
  std::vector<Element> out;
  while (out.size() < n) {
    auto x = en.next();
    if (!x) break;
    out.push_back(*x);
  }
  return out;
}

namespace lang {

EventuallyPeriodicSet odd_positive() { return EventuallyPeriodicSet::ray(1, 2); }
EventuallyPeriodicSet even_nonnegative() { return EventuallyPeriodicSet::ray(0, 2); }
EventuallyPeriodicSet integers() { return EventuallyPeriodicSet::all_integers(); }
EventuallyPeriodicSet negatives() { return EventuallyPeriodicSet::ray(-1, -1); }
EventuallyPeriodicSet naturals() { return EventuallyPeriodicSet::ray(0, 1); }

EventuallyPeriodicSet y_family(std::int64_t a) {
  if (a < 0) throw std::invalid_argument("Y(-a) requires a >= 0");
  return set_union(EventuallyPeriodicSet::interval(-a, 0), even_nonnegative());
}

EventuallyPeriodicSet q_family(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("Q(-b) requires b >= 1");
  return set_union(EventuallyPeriodicSet::ray(-b, -1), odd_positive());
}

}  // namespace lang

}  // namespace safegen
