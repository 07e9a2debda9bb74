// Seeded fuzzing of the set algebra against a raw pointwise oracle.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "safegen/set_algebra.hpp"

namespace safegen {

/// Uncanonicalized parts; membership is evaluated straight from the fields.
struct RawSet {
  ResidueClasses left;
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::vector<bool> window;
  ResidueClasses right;

  bool member(std::int64_t x) const {
    if (x < lo) return left.contains(x);
    if (x > hi) return right.contains(x);
    return window[static_cast<std::size_t>(x - lo)];
  }
  EventuallyPeriodicSet build() const {
    return EventuallyPeriodicSet::from_parts(left, lo, hi, window, right);
  }
};

/// Periods in 1..12, window inside [-64, 64].
RawSet random_raw_set(std::mt19937_64& rng);

/// Operations under test; swapped out by the harness's negative tests.
struct AlgebraOps {
  using Binary = EventuallyPeriodicSet (*)(const EventuallyPeriodicSet&,
                                           const EventuallyPeriodicSet&);
  Binary unite = &set_union;
  Binary intersect = &set_intersect;
  Binary difference = &set_difference;
};

/// Checks one seeded pair; returns a counterexample description on failure.
std::optional<std::string> check_algebra_case(std::uint64_t seed, std::size_t index,
                                              const AlgebraOps& ops = {});

struct AlgebraReport {
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;  // smallest failing case index
  std::string counterexample;
};

AlgebraReport check_algebra_serial(std::uint64_t seed, std::size_t count,
                                   const AlgebraOps& ops = {});
/// OpenMP over case indices; reports the same first failure as the serial run.
AlgebraReport check_algebra_parallel(std::uint64_t seed, std::size_t count,
                                     const AlgebraOps& ops = {});

}  // namespace safegen
