#include <doctest.h>

#include <numeric>
#include <set>

#include "couplingkit/metrics.hpp"
#include "couplingkit/worked_examples.hpp"
#include "couplingkit/transport.hpp"
#include "support/random_instances.hpp"

using namespace couplingkit;

namespace {

Pmf pmf(std::initializer_list<std::int64_t> weights, std::int64_t den) {
  std::vector<Rat> p;
  for (auto w : weights) p.emplace_back(w, den);
  const std::size_t n = p.size();
  return Pmf(Alphabet::numbered(n), std::move(p));
}

bool is_spanning_tree(const BasisTree& tree, std::size_t n) {
  if (tree.cells.size() != 2 * n - 1) return false;
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& [r, c] : tree.cells) {
    const auto a = find(r);
    const auto b = find(n + c);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace

TEST_CASE("zero cost is optimal at any basic solution") {
  const Pmf p = fixtures::single_px();
  const Pmf q = fixtures::single_py();
  const auto sol = solve_transport(TransportProblem(p, q, RatMatrix(4, 4)));
  CHECK(sol.certificate.objective.is_zero());
  CHECK(sol.pivots == 0);
  CHECK(is_spanning_tree(sol.basis, 4));
}

TEST_CASE("equal marginals: the diagonal is optimal") {
  const Pmf half = pmf({1, 1}, 2);
  const auto sol = solve_transport(TransportProblem::mismatch(half, half));
  CHECK(sol.certificate.objective.is_zero());
  CHECK(sol.coupling(0, 0) == Rat(1, 2));
  CHECK(sol.coupling(1, 1) == Rat(1, 2));
}

TEST_CASE("worked examples") {
  const auto a = lp_min_mismatch(fixtures::single_px(), fixtures::single_py());
  CHECK(a.certificate.objective == Rat(1, 5));
  CHECK(mismatch_prob(a.coupling) == Rat(1, 5));

  const auto tp = TransportProblem::mismatch(fixtures::pairs_px().flatten(), fixtures::pairs_py().flatten());
  const auto b = solve_transport(tp);
  CHECK(b.certificate.objective == Rat(5, 9));
  CHECK(is_spanning_tree(b.basis, 9));
  CHECK(certify(b.coupling, b.certificate, tp));

  const Pmf p = fixtures::single_px();
  const auto same = lp_min_mismatch(p, p);
  CHECK(same.certificate.objective.is_zero());
  for (std::size_t i = 0; i < 4; ++i) CHECK(same.coupling(i, i) == p[i]);
}

TEST_CASE("unbalanced and malformed problems are rejected") {
  CHECK_THROWS_AS(TransportProblem::from_masses(Alphabet::numbered(2), {Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 3)},
                                                RatMatrix(2, 2)),
                  UnbalancedProblem);
  CHECK_THROWS_AS(TransportProblem::from_masses(Alphabet::numbered(2), {Rat(1), Rat(1)}, {Rat(1), Rat(1)},
                                                RatMatrix(2, 2)),
                  InvalidDistribution);
  CHECK_NOTHROW(TransportProblem::from_masses(Alphabet::numbered(2), {Rat(1), Rat(0)}, {Rat(0), Rat(1)},
                                              RatMatrix(2, 2)));
  CHECK_THROWS_AS(TransportProblem(pmf({1, 1}, 2), pmf({1, 1}, 2), RatMatrix(3, 3)), AlphabetMismatch);
}

TEST_CASE("certify") {
  const Pmf p = fixtures::single_px();
  const Pmf q = fixtures::single_py();
  const auto tp = TransportProblem::mismatch(p, q);
  const auto sol = solve_transport(tp);
  CHECK(certify(sol.coupling, sol.certificate, tp));
  CHECK(certify(coupling_maximal(p, q), sol.certificate, tp));
  CHECK_FALSE(certify(coupling_independent(p, q), sol.certificate, tp));

  const Rat eps(1, 1000000);
  for (std::size_t k = 0; k < 4; ++k) {
    DualCertificate u = sol.certificate;
    u.u[k] += eps;
    CHECK_FALSE(certify(sol.coupling, u, tp));
    DualCertificate v = sol.certificate;
    v.v[k] += eps;
    CHECK_FALSE(certify(sol.coupling, v, tp));
  }
  DualCertificate obj = sol.certificate;
  obj.objective += eps;
  CHECK_FALSE(certify(sol.coupling, obj, tp));

  DualCertificate short_cert = sol.certificate;
  short_cert.u.pop_back();
  CHECK_THROWS_AS(certify(sol.coupling, short_cert, tp), AlphabetMismatch);
}

TEST_CASE("vertex enumeration") {
  const Pmf half = pmf({1, 1}, 2);
  const auto v2 = vertex_enumerate(TransportProblem::mismatch(half, half));
  REQUIRE(v2.size() == 2);
  std::set<std::string> shapes;
  for (const auto& c : v2) shapes.insert(c(0, 0).str() + c(0, 1).str());
  CHECK(shapes == std::set<std::string>{"1/20", "01/2"});

  const Pmf p = fixtures::single_px();
  const Pmf q = fixtures::single_py();
  const auto v4 = vertex_enumerate(TransportProblem::mismatch(p, q));
  Rat best(1);
  for (const auto& c : v4) {
    CHECK(lemma_audit(c).holds);
    best = min(best, mismatch_prob(c));
  }
  CHECK(best == Rat(1, 5));

  const auto v0 = vertex_enumerate(TransportProblem::mismatch(p, p));
  bool zero = false;
  for (const auto& c : v0) zero = zero || mismatch_prob(c).is_zero();
  CHECK(zero);

  CHECK_THROWS_AS(vertex_enumerate(TransportProblem::mismatch(Pmf::uniform(Alphabet::numbered(5)),
                                                              Pmf::uniform(Alphabet::numbered(5)))),
                  LimitExceeded);
}

TEST_CASE("property: LP optimum equals v and certifies the product-residual coupling") {
  testing::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 6));
    const Pmf p = testing::random_pmf(rng, n);
    const Pmf q = testing::random_pmf(rng, n);
    const auto tp = TransportProblem::mismatch(p, q);
    const auto sol = solve_transport(tp);
    CHECK(sol.certificate.objective == vdist_halfsum(p, q));
    CHECK(certify(sol.coupling, sol.certificate, tp));
    CHECK(certify(coupling_maximal(p, q), sol.certificate, tp));
    CHECK(is_spanning_tree(sol.basis, n));
  }
}

TEST_CASE("property: general costs agree with brute-force vertex enumeration") {
  testing::Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 3));
    const Pmf p = testing::random_pmf(rng, n, 0.3, 6);
    const Pmf q = testing::random_pmf(rng, n, 0.3, 6);
    const TransportProblem tp(p, q, testing::random_cost(rng, n));
    const auto sol = solve_transport(tp);
    CHECK(certify(sol.coupling, sol.certificate, tp));
    std::optional<Rat> best;
    for (const auto& c : vertex_enumerate(tp)) {
      const Rat obj = tp.objective(c.matrix());
      if (!best || obj < *best) best = obj;
    }
    REQUIRE(best);
    CHECK(*best == sol.certificate.objective);
  }
}

TEST_CASE("property: degenerate instances terminate") {
  testing::Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 12));
    // Most symbols carry no mass; many weights tie.
    const Pmf p = testing::random_pmf(rng, n, 0.7, 2);
    const Pmf q = testing::random_pmf(rng, n, 0.7, 2);
    const TransportProblem tp(p, q, testing::random_cost(rng, n, 0, 2));
    const auto sol = solve_transport(tp);
    CHECK(certify(sol.coupling, sol.certificate, tp));
    CHECK(solve_transport(TransportProblem::mismatch(p, q)).certificate.objective == vdist_halfsum(p, q));
  }
}

TEST_CASE("property: perturbed certificates are rejected") {
  testing::Rng rng(44);
  const Rat eps(1, 1000000);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 6));
    const Pmf p = testing::random_pmf(rng, n);
    const Pmf q = testing::random_pmf(rng, n);
    const auto tp = TransportProblem::mismatch(p, q);
    const auto sol = solve_transport(tp);
    DualCertificate bad = sol.certificate;
    const auto k = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    // Every potential sits on a tight basic cell, so raising it breaks dual feasibility.
    if (testing::uniform_int(rng, 0, 1)) {
      bad.u[k] += eps;
    } else {
      bad.v[k] += eps;
    }
    CHECK_FALSE(certify(sol.coupling, bad, tp));
  }
}
