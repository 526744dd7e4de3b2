#include "couplingkit/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "couplingkit/errors.hpp"

namespace couplingkit {

Rat vdist_halfsum(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "vdist");
  Rat total;
  for (std::size_t i = 0; i < p.size(); ++i) total += (p[i] - q[i]).abs();
  return total / Rat(2);
}

SubsetMax vdist_subset(const Pmf& p, const Pmf& q, std::size_t limit) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "vdist_subset");
  const std::size_t n = p.size();
  if (n > limit || n >= 63) {
    throw LimitExceeded("subset enumeration over " + std::to_string(n) + " symbols exceeds limit " +
                        std::to_string(limit));
  }

  std::vector<Rat> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = p[i] - q[i];

  // Gray-code walk: consecutive subsets differ by one symbol.
  const std::uint64_t count = std::uint64_t{1} << n;
  Rat current;
  Rat best;
  std::uint64_t best_mask = 0;
  std::uint64_t prev_gray = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t flipped = gray ^ prev_gray;
    const auto bit = static_cast<std::size_t>(std::countr_zero(flipped));
    if (gray & flipped) {
      current += diff[bit];
    } else {
      current -= diff[bit];
    }
    prev_gray = gray;
    if (current > best || (current == best && gray < best_mask)) {
      best = current;
      best_mask = gray;
    }
  }

  SubsetMax out{best, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask & (std::uint64_t{1} << i)) out.members.push_back(i);
  }
  return out;
}

bool UpperSet::contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }

UpperSet upper_set(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "upper_set");
  UpperSet b;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= q[i]) b.members.push_back(i);
  }
  return b;
}

Rat mass_of(const Pmf& p, const std::vector<std::size_t>& members) {
  Rat s;
  for (auto i : members) s += p[i];
  return s;
}

}  // namespace couplingkit
