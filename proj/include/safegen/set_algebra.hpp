// Eventually-periodic subsets of the integers.
//
// Every language in the simulator is a set of integers that, outside a finite
// window [lo, hi], follows a fixed residue pattern on each tail. The class is
// kept in a canonical form (minimal periods, tight window) so that two sets are
// equal exactly when their fields are equal, and every Boolean combination and
// emptiness question is decided exactly.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace safegen {

using Element = std::int64_t;

/// Position in the fixed universe enumeration u_1, u_2, ... (rank >= 1).
struct UniverseIndex {
  std::uint64_t rank = 1;

  constexpr explicit UniverseIndex(std::uint64_t r) : rank(r) {}
  friend constexpr bool operator==(UniverseIndex, UniverseIndex) = default;
  friend constexpr auto operator<=>(UniverseIndex, UniverseIndex) = default;
};

/// Zigzag bijection rank -> integer: 0, 1, -1, 2, -2, ...
constexpr Element universe_elem(UniverseIndex i) {
  const auto r = static_cast<std::int64_t>(i.rank);
  return (r % 2 == 0) ? r / 2 : -(r - 1) / 2;
}

constexpr UniverseIndex universe_index(Element x) {
  return UniverseIndex{x > 0 ? static_cast<std::uint64_t>(2 * x)
                             : static_cast<std::uint64_t>(-2 * x + 1)};
}

constexpr std::int64_t floor_mod(std::int64_t x, std::int64_t d) {
  const std::int64_t r = x % d;
  return r < 0 ? r + d : r;
}

/// A subset of Z/dZ, used as the membership rule of an unbounded tail.
class ResidueClasses {
 public:
  ResidueClasses() : period_(1), mask_(1, false) {}
  ResidueClasses(std::int64_t period, std::vector<bool> mask);

  static ResidueClasses none() { return {}; }
  static ResidueClasses all() { return ResidueClasses(1, {true}); }
  static ResidueClasses single(std::int64_t period, std::int64_t residue);

  bool contains(std::int64_t x) const { return mask_[static_cast<std::size_t>(floor_mod(x, period_))]; }
  std::int64_t period() const { return period_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool empty() const;
  std::size_t count() const;
  std::vector<std::int64_t> residues() const;

  /// Same rule expressed with the smallest possible period.
  ResidueClasses minimized() const;
  /// Same rule expressed over a multiple of the current period.
  ResidueClasses refined(std::int64_t period) const;

  friend bool operator==(const ResidueClasses&, const ResidueClasses&) = default;

 private:
  std::int64_t period_;
  std::vector<bool> mask_;
};

class CardinalityClass {
 public:
  enum class Kind { Empty, Finite, Infinite };

  static CardinalityClass empty() { return CardinalityClass(Kind::Empty, 0); }
  static CardinalityClass infinite() { return CardinalityClass(Kind::Infinite, 0); }
  /// Finite(0) normalizes to Empty.
  static CardinalityClass finite(std::size_t n) {
    return n == 0 ? empty() : CardinalityClass(Kind::Finite, n);
  }

  Kind kind() const { return kind_; }
  std::size_t count() const { return count_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  std::string to_string() const;

  friend bool operator==(const CardinalityClass&, const CardinalityClass&) = default;

 private:
  CardinalityClass(Kind k, std::size_t n) : kind_(k), count_(n) {}
  Kind kind_;
  std::size_t count_;
};

class EventuallyPeriodicSet {
 public:
  /// The empty set.
  EventuallyPeriodicSet();

  /// Builds and canonicalizes a set from raw parts: values below `lo` follow
  /// `left`, values above `hi` follow `right`, and [lo, hi] is explicit.
  /// `window.size()` must equal hi - lo + 1 (an empty window has hi = lo - 1).
  static EventuallyPeriodicSet from_parts(ResidueClasses left, std::int64_t lo, std::int64_t hi,
                                          std::vector<bool> window, ResidueClasses right);

  static EventuallyPeriodicSet all_integers();
  /// {start + k*step : k >= 0}; step may be negative, never zero.
  static EventuallyPeriodicSet ray(Element start, std::int64_t step);
  static EventuallyPeriodicSet finite(std::span<const Element> members);
  static EventuallyPeriodicSet interval(Element lo, Element hi);

  bool member(Element x) const {
    if (x < lo_) return left_.contains(x);
    if (x > hi_) return right_.contains(x);
    return window_[static_cast<std::size_t>(x - lo_)];
  }

  CardinalityClass cardinality() const;
  bool is_empty() const { return cardinality().is_empty(); }

  const ResidueClasses& left() const { return left_; }
  const ResidueClasses& right() const { return right_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const std::vector<bool>& window() const { return window_; }
  std::vector<Element> window_members() const;

  /// Largest |x| that lies inside the explicit window boundaries.
  std::int64_t extent() const;
  std::int64_t max_period() const;

  friend bool operator==(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;

 private:
  ResidueClasses left_;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = -1;
  std::vector<bool> window_;
  ResidueClasses right_;
};

EventuallyPeriodicSet set_union(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
EventuallyPeriodicSet set_intersect(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
EventuallyPeriodicSet set_difference(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
/// Complement within the integers.
EventuallyPeriodicSet set_complement(const EventuallyPeriodicSet& a);

inline bool member(const EventuallyPeriodicSet& s, Element x) { return s.member(x); }
inline CardinalityClass cardinality(const EventuallyPeriodicSet& s) { return s.cardinality(); }
bool subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
bool proper_subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
inline bool equal(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) { return a == b; }

/// Members of `s` among u_1..u_m, in universe order.
std::vector<Element> prefix(const EventuallyPeriodicSet& s, std::size_t m);

/// Lazy universe-order enumeration of a set. Infinite sets never run dry;
/// finite sets terminate after their last member.
class CanonicalEnumerator {
 public:
  explicit CanonicalEnumerator(EventuallyPeriodicSet s);
  std::optional<Element> next();
  /// Universe rank of the most recently produced element.
  std::uint64_t last_rank() const { return rank_; }

 private:
  EventuallyPeriodicSet set_;
  std::uint64_t rank_ = 0;
  std::optional<std::uint64_t> stop_rank_;
};

std::vector<Element> enumerate_first(const EventuallyPeriodicSet& s, std::size_t n);

// The named languages of the identification-impossibility construction.
namespace lang {
EventuallyPeriodicSet odd_positive();      // O = {1, 3, 5, ...}
EventuallyPeriodicSet even_nonnegative();  // E = {0, 2, 4, ...}
EventuallyPeriodicSet integers();          // I
EventuallyPeriodicSet negatives();         // N = {-1, -2, ...}
EventuallyPeriodicSet naturals();          // {0, 1, 2, ...}
/// Y(-a) = {-a, ..., 0} u E, a >= 0.
EventuallyPeriodicSet y_family(std::int64_t a);
/// Q(-b) = {..., -b-1, -b} u O, b >= 1.
EventuallyPeriodicSet q_family(std::int64_t b);
}  // namespace lang

}  // namespace safegen
