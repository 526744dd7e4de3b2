#pragma once

#include <cstddef>
#include <vector>

#include "couplingkit/distribution.hpp"

namespace couplingkit {

inline constexpr std::size_t kDefaultSubsetLimit = 20;

/// v(P,Q) = 1/2 * sum_a |P(a) - Q(a)|.
Rat vdist_halfsum(const Pmf& p, const Pmf& q);

struct SubsetMax {
  Rat value;
  std::vector<std::size_t> members;  // symbol indices, ascending
};

/// max over all subsets S of P(S) - Q(S), by enumerating all 2^N subsets.
/// Among maximizers the subset with the smallest bitmask wins (so the empty
/// set when P = Q). Throws LimitExceeded when N > limit.
SubsetMax vdist_subset(const Pmf& p, const Pmf& q, std::size_t limit = kDefaultSubsetLimit);

/// B = { b : P(b) >= Q(b) }; ties belong to B.
struct UpperSet {
  std::vector<std::size_t> members;

  bool contains(std::size_t i) const;
};

UpperSet upper_set(const Pmf& p, const Pmf& q);

// P(S) for a set of indices.
Rat mass_of(const Pmf& p, const std::vector<std::size_t>& members);

}  // namespace couplingkit
