#pragma once

// Random exact-rational instances for property tests. Test infrastructure only.

#include <cstdint>
#include <random>
#include <vector>

#include "couplingkit/coupling.hpp"
#include "couplingkit/distribution.hpp"
#include "couplingkit/transport.hpp"

namespace couplingkit::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Integer weights in [0, max_weight], each zero with probability zero_chance,
// normalized to a Pmf. At least one weight is positive.
inline Pmf random_pmf(Rng& rng, std::size_t n, double zero_chance = 0.2, std::int64_t max_weight = 30) {
  std::bernoulli_distribution zero(zero_chance);
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = zero(rng) ? 0 : uniform_int(rng, 1, max_weight);
    total += x;
  }
  if (total == 0) {
    w[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1))] = 1;
    total = 1;
  }
  std::vector<Rat> p;
  for (auto x : w) p.emplace_back(x, total);
  return Pmf(Alphabet::numbered(n), std::move(p));
}

// Every entry strictly inside (0, 1); needs n >= 2.
inline Pmf random_interior_pmf(Rng& rng, std::size_t n, std::int64_t max_weight = 50) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 1, max_weight);
    total += x;
  }
  std::vector<Rat> p;
  for (auto x : w) p.emplace_back(x, total);
  return Pmf(Alphabet::numbered(n), std::move(p));
}

inline RatMatrix random_cost(Rng& rng, std::size_t n, std::int64_t lo = -5, std::int64_t hi = 10) {
  RatMatrix c(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) c(a, b) = Rat(uniform_int(rng, lo, hi), uniform_int(rng, 1, 4));
  }
  return c;
}

// A random vertex of the transportation polytope: the LP optimum for a random cost.
inline Coupling random_vertex(Rng& rng, const Pmf& p, const Pmf& q) {
  return solve_transport(TransportProblem(p, q, random_cost(rng, p.size()))).coupling;
}

// Convex combination with random rational weights of the independent coupling,
// the product-residual maximal coupling and a few random polytope vertices.
inline Coupling random_coupling(Rng& rng, const Pmf& p, const Pmf& q, std::size_t extra_vertices = 2) {
  std::vector<Coupling> parts{coupling_independent(p, q), coupling_maximal(p, q)};
  for (std::size_t k = 0; k < extra_vertices; ++k) parts.push_back(random_vertex(rng, p, q));

  std::vector<std::int64_t> w(parts.size());
  std::int64_t total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 0, 9);
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  const std::size_t n = p.size();
  RatMatrix j(n, n);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (w[k] == 0) continue;
    const Rat lambda(w[k], total);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) j(a, b) += lambda * parts[k](a, b);
    }
  }
  return coupling_validate(std::move(j), p, q);
}

}  // namespace couplingkit::testing
