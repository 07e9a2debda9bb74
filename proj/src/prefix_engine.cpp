#include "safegen/prefix_engine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace safegen {

Bits prefix_bits(const EventuallyPeriodicSet& s, std::uint64_t ranks) {
  Bits out((ranks + 63) / 64, 0);
  for (std::uint64_t r = 1; r <= ranks; ++r) {
    if (s.member(universe_elem(UniverseIndex{r}))) out[(r - 1) / 64] |= std::uint64_t{1} << ((r - 1) % 64);
  }
  return out;
}

Bits seen_bits(const RevealedSet& s) {
  Bits out((s.max_rank() + 63) / 64, 0);
  for (Element x : s.all()) set_rank(out, universe_index(x).rank);
  return out;
}

const Bits& PrefixCache::bits(std::size_t index, std::uint64_t ranks) {
  if (cache_.size() < index) {
    cache_.resize(index);
    covered_.resize(index, 0);
  }
  Bits& b = cache_[index - 1];
  std::uint64_t& have = covered_[index - 1];
  if (have < ranks) {
    // Grow geometrically so repeated small extensions stay cheap.
    const std::uint64_t target = std::max(ranks, 2 * have);
    const auto& lang = coll_->at(index);
    b.resize((target + 63) / 64, 0);
    for (std::uint64_t r = have + 1; r <= target; ++r) {
      if (lang.member(universe_elem(UniverseIndex{r}))) b[(r - 1) / 64] |= std::uint64_t{1} << ((r - 1) % 64);
    }
    have = target;
  }
  return b;
}

std::size_t CriticalScan::highest_critical(std::uint64_t m) const {
  for (std::size_t k = indices.size(); k-- > 0;) {
    if (delta[k] > m) return k;
  }
  // The first consistent candidate is critical for every m.
  return 0;
}

namespace {

std::uint64_t first_rank(const Bits& a, const Bits& mask_out, bool invert_a, std::size_t words,
                         std::uint64_t ranks) {
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t av = w < a.size() ? a[w] : 0;
    std::uint64_t v = invert_a ? (~av & mask_out[w]) : (av & ~mask_out[w]);
    if (v != 0) {
      const std::uint64_t r = w * 64 + static_cast<std::uint64_t>(std::countr_zero(v)) + 1;
      return r <= ranks ? r : kNeverViolated;
    }
  }
  return kNeverViolated;
}

}  // namespace

CriticalScan scan_critical(PrefixCache& cache, std::span<const std::size_t> consistent,
                           std::uint64_t ranks, Criticality kind) {
  CriticalScan out;
  out.indices.assign(consistent.begin(), consistent.end());
  out.delta.reserve(consistent.size());
  const std::size_t words = (ranks + 63) / 64;
  // Running intersection (Smallest) or union (Largest) of earlier candidates.
  Bits acc(words, kind == Criticality::Smallest ? ~std::uint64_t{0} : 0);
  for (std::size_t n : consistent) {
    const Bits& b = cache.bits(n, ranks);
    if (kind == Criticality::Smallest) {
      out.delta.push_back(first_rank(b, acc, false, words, ranks));
      for (std::size_t w = 0; w < words; ++w) acc[w] &= b[w];
    } else {
      out.delta.push_back(first_rank(b, acc, true, words, ranks));
      for (std::size_t w = 0; w < words; ++w) acc[w] |= b[w];
    }
  }
  return out;
}

std::uint64_t escalation_bound(std::span<const EventuallyPeriodicSet* const> langs,
                               std::uint64_t max_seen_rank, std::uint64_t slack) {
  constexpr std::uint64_t kPeriodCap = std::uint64_t{1} << 20;
  std::uint64_t window = 0;
  std::uint64_t period_max = 1;
  std::uint64_t period_lcm = 1;
  for (const auto* l : langs) {
    window = std::max(window, static_cast<std::uint64_t>(l->extent()));
    const auto p = static_cast<std::uint64_t>(l->max_period());
    period_max = std::max(period_max, p);
    period_lcm = std::min(kPeriodCap, std::lcm(period_lcm, std::lcm<std::uint64_t>(
                                                               static_cast<std::uint64_t>(l->left().period()),
                                                               static_cast<std::uint64_t>(l->right().period()))));
  }
  return std::max<std::uint64_t>(1, max_seen_rank) + 4 * (window + period_lcm * period_max) + 64 +
         slack;
}

}  // namespace safegen
