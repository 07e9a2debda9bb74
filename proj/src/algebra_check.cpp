#include "safegen/algebra_check.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "safegen/set_spec.hpp"

namespace safegen {

namespace {

ResidueClasses random_classes(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> period(1, 12);
  std::bernoulli_distribution bit(0.4);
  const std::int64_t p = period(rng);
  std::vector<bool> mask(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = bit(rng);
  return ResidueClasses(p, std::move(mask));
}

std::string show(const RawSet& r) {
  std::string s = "raw{left=" + std::to_string(r.left.period()) + ":";
  for (bool b : r.left.mask()) s += b ? '1' : '0';
  s += " [" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "]=";
  for (bool b : r.window) s += b ? '1' : '0';
  s += " right=" + std::to_string(r.right.period()) + ":";
  for (bool b : r.right.mask()) s += b ? '1' : '0';
  return s + "}";
}

/// Classifies a predicate's cardinality by counting over two nested ranges
/// past the region where the raw windows live.
CardinalityClass brute_cardinality(const std::function<bool(std::int64_t)>& in,
                                   std::int64_t period) {
  auto count = [&](std::int64_t r) {
    std::size_t n = 0;
    for (std::int64_t x = -r; x <= r; ++x) n += in(x);
    return n;
  };
  const std::int64_t r1 = 64 + period;
  const std::size_t c1 = count(r1);
  const std::size_t c2 = count(r1 + 2 * period);
  if (c2 > c1) return CardinalityClass::infinite();
  return CardinalityClass::finite(c1);
}

}  // namespace

RawSet random_raw_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> pos(-64, 64);
  std::bernoulli_distribution bit(0.5);
  RawSet r;
  r.left = random_classes(rng);
  r.right = random_classes(rng);
  std::int64_t a = pos(rng);
  std::int64_t b = pos(rng);
  if (a > b) std::swap(a, b);
  if (bit(rng)) b = a - 1;  // empty window
  r.lo = a;
  r.hi = b;
  r.window.resize(static_cast<std::size_t>(b - a + 1));
  for (std::size_t i = 0; i < r.window.size(); ++i) r.window[i] = bit(rng);
  return r;
}

std::optional<std::string> check_algebra_case(std::uint64_t seed, std::size_t index,
                                              const AlgebraOps& ops) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  const RawSet ra = random_raw_set(rng);
  const RawSet rb = random_raw_set(rng);
  const auto a = ra.build();
  const auto b = rb.build();
  auto fail = [&](const std::string& what) {
    return "case " + std::to_string(index) + ": " + what + "\n  A = " + show(ra) +
           "\n  B = " + show(rb);
  };

  const std::int64_t period = std::max(std::lcm(ra.left.period(), rb.left.period()),
                                       std::lcm(ra.right.period(), rb.right.period()));
  const std::int64_t reach = 64 + 3 * period;

  struct Op {
    const char* name;
    EventuallyPeriodicSet result;
    std::function<bool(std::int64_t)> oracle;
  };
  const Op results[] = {
      {"A", a, [&](std::int64_t x) { return ra.member(x); }},
      {"B", b, [&](std::int64_t x) { return rb.member(x); }},
      {"union", ops.unite(a, b), [&](std::int64_t x) { return ra.member(x) || rb.member(x); }},
      {"intersect", ops.intersect(a, b),
       [&](std::int64_t x) { return ra.member(x) && rb.member(x); }},
      {"difference", ops.difference(a, b),
       [&](std::int64_t x) { return ra.member(x) && !rb.member(x); }},
      {"complement", set_complement(a), [&](std::int64_t x) { return !ra.member(x); }},
  };
  for (const auto& op : results) {
    for (std::int64_t x = -reach; x <= reach; ++x) {
      if (op.result.member(x) != op.oracle(x)) {
        return fail(std::string(op.name) + " membership differs at x=" + std::to_string(x));
      }
    }
    const auto expect = brute_cardinality(op.oracle, period);
    if (op.result.cardinality() != expect) {
      return fail(std::string(op.name) + " cardinality " + op.result.cardinality().to_string() +
                  ", brute force " + expect.to_string());
    }
    if (parse_set_spec(to_set_spec(op.result)) != op.result) {
      return fail(std::string(op.name) + " does not round-trip through '" +
                  to_set_spec(op.result) + "'");
    }
  }

  bool brute_subset = true;
  for (std::int64_t x = -reach; x <= reach && brute_subset; ++x) {
    brute_subset = !ra.member(x) || rb.member(x);
  }
  if (subset(a, b) != brute_subset) return fail("subset disagrees with brute force");
  return std::nullopt;
}

AlgebraReport check_algebra_serial(std::uint64_t seed, std::size_t count, const AlgebraOps& ops) {
  AlgebraReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    ++rep.checked;
    if (auto why = check_algebra_case(seed, i, ops)) {
      rep.first_failure = i;
      rep.counterexample = *why;
      break;
    }
  }
  return rep;
}

AlgebraReport check_algebra_parallel(std::uint64_t seed, std::size_t count,
                                     const AlgebraOps& ops) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t first = kNone;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx < first && check_algebra_case(seed, idx, ops)) first = idx;
  }
  AlgebraReport rep;
  if (first == kNone) {
    rep.checked = count;
    return rep;
  }
  // Same accounting as the serial run: cases up to and including the failure.
  rep.checked = first + 1;
  rep.first_failure = first;
  rep.counterexample = *check_algebra_case(seed, first, ops);
  return rep;
}

}  // namespace safegen
