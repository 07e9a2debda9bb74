// Prefix bitsets over universe ranks and (t,m)-criticality scans.
//
// Rank r (1-based) lives in bit r-1. A language's bitset is extended lazily
// whenever a scan asks for more ranks than are cached.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "safegen/collections.hpp"

namespace safegen {

using Bits = std::vector<std::uint64_t>;

inline bool test_rank(const Bits& b, std::uint64_t rank) {
  const std::uint64_t i = rank - 1;
  return i / 64 < b.size() && ((b[i / 64] >> (i % 64)) & 1U) != 0;
}

inline void set_rank(Bits& b, std::uint64_t rank) {
  const std::uint64_t i = rank - 1;
  if (i / 64 >= b.size()) b.resize(i / 64 + 1, 0);
  b[i / 64] |= std::uint64_t{1} << (i % 64);
}

/// Bitset of the members of `s` among u_1..u_ranks.
Bits prefix_bits(const EventuallyPeriodicSet& s, std::uint64_t ranks);

/// Bitset of the revealed elements.
Bits seen_bits(const RevealedSet& s);

class PrefixCache {
 public:
  explicit PrefixCache(const LanguageCollection& coll) : coll_(&coll) {}

  /// Bitset of collection index i covering at least ranks 1..ranks.
  const Bits& bits(std::size_t index, std::uint64_t ranks);

 private:
  const LanguageCollection* coll_;
  std::vector<Bits> cache_;
  std::vector<std::uint64_t> covered_;
};

/// Smallest: L_n[m] inside the intersection of earlier consistent prefixes.
/// Largest: L_n[m] contains the union of earlier consistent prefixes.
enum class Criticality { Smallest, Largest };

inline constexpr std::uint64_t kNeverViolated = std::numeric_limits<std::uint64_t>::max();

/// For each consistent index n, the first rank at which L_n breaks the
/// criticality condition against earlier consistent candidates, or
/// kNeverViolated when it holds on all scanned ranks. L_n is (t,m)-critical
/// exactly when delta > m (for m <= ranks).
struct CriticalScan {
  std::vector<std::size_t> indices;
  std::vector<std::uint64_t> delta;

  /// Position in `indices` of the highest-indexed candidate critical at m.
  std::size_t highest_critical(std::uint64_t m) const;
};

CriticalScan scan_critical(PrefixCache& cache, std::span<const std::size_t> consistent,
                           std::uint64_t ranks, Criticality kind);

class EscalationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Static cap on the m-escalation loop: every finite criticality break and an
/// unseen member of any infinite combination of the languages fall below it.
std::uint64_t escalation_bound(std::span<const EventuallyPeriodicSet* const> langs,
                               std::uint64_t max_seen_rank, std::uint64_t slack = 0);

}  // namespace safegen
