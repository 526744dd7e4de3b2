#include <doctest.h>

#include "couplingkit/coupling.hpp"
#include "couplingkit/metrics.hpp"
#include "couplingkit/worked_examples.hpp"
#include "support/random_instances.hpp"

using namespace couplingkit;

namespace {

RatMatrix matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  const std::size_t n = rows.size();
  RatMatrix m(n, n);
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const char* x : row) m(r, c++) = Rat::parse(x);
    ++r;
  }
  return m;
}

Pmf pmf(std::initializer_list<std::int64_t> weights, std::int64_t den) {
  std::vector<Rat> p;
  for (auto w : weights) p.emplace_back(w, den);
  const std::size_t n = p.size();
  return Pmf(Alphabet::numbered(n), std::move(p));
}

const Pmf kPx = fixtures::single_px();
const Pmf kPy = fixtures::single_py();

}  // namespace

TEST_CASE("validate accepts couplings") {
  CHECK_NOTHROW(coupling_validate(fixtures::single_alternate(), kPx, kPy));
  RatMatrix id(3, 3);
  for (std::size_t a = 0; a < 3; ++a) id(a, a) = Rat(1, 3);
  const Pmf u3 = Pmf::uniform(Alphabet::numbered(3));
  CHECK_NOTHROW(coupling_validate(id, u3, u3));
}

TEST_CASE("validate names the first violated constraint") {
  auto fault_of = [](const RatMatrix& j, const Pmf& p, const Pmf& q) {
    try {
      coupling_validate(j, p, q);
    } catch (const InvalidCoupling& e) {
      return std::make_pair(e.fault(), e.symbol());
    }
    FAIL("expected InvalidCoupling");
    return std::make_pair(CouplingFault::Shape, std::string());
  };

  CHECK(fault_of(RatMatrix(4, 4), kPx, kPy).first == CouplingFault::Mass);
  CHECK(fault_of(RatMatrix(3, 3), kPx, kPy).first == CouplingFault::Shape);

  RatMatrix neg = fixtures::single_alternate();
  neg(0, 1) = Rat(-1, 80);
  neg(0, 0) += Rat(2, 80);
  CHECK(fault_of(neg, kPx, kPy) == std::make_pair(CouplingFault::NegativeEntry, std::string("(1,2)")));

  // Move mass within column 1 from row 1 to row 3: row marginals break first.
  RatMatrix rows = fixtures::single_alternate();
  rows(0, 0) -= Rat(1, 80);
  rows(2, 0) += Rat(1, 80);
  CHECK(fault_of(rows, kPx, kPy) == std::make_pair(CouplingFault::RowMarginal, std::string("1")));

  // Move mass within row 2 between columns 2 and 4: only column marginals break.
  RatMatrix cols = fixtures::single_alternate();
  cols(1, 1) -= Rat(1, 80);
  cols(1, 3) += Rat(1, 80);
  CHECK(fault_of(cols, kPx, kPy) == std::make_pair(CouplingFault::ColumnMarginal, std::string("2")));

  CHECK_THROWS_AS(coupling_validate(RatMatrix(3, 3), Pmf::uniform(Alphabet::numbered(3)), kPy), AlphabetMismatch);
}

TEST_CASE("independent coupling") {
  const Coupling a = coupling_independent(kPx, kPy);
  CHECK(a.matrix() == matrix({{"0.025", "0.025", "0.025", "0.025"},
                              {"0.05", "0.05", "0.05", "0.05"},
                              {"0.075", "0.075", "0.075", "0.075"},
                              {"0.1", "0.1", "0.1", "0.1"}}));
  const Pmf u5 = Pmf::uniform(Alphabet::numbered(5));
  const Coupling uu = coupling_independent(u5, u5);
  for (const auto& x : uu.matrix().values()) CHECK(x == Rat(1, 25));

  const Coupling point = coupling_independent(pmf({1, 0}, 1), pmf({1, 0}, 1));
  CHECK(point.matrix() == matrix({{"1", "0"}, {"0", "0"}}));
}

TEST_CASE("product-residual maximal coupling reproduces the worked example") {
  // Frozen from an independent Fraction-based evaluation of the construction.
  const RatMatrix expected = matrix({{"1/10", "0", "0", "0"},
                                   {"0", "1/5", "0", "0"},
                                   {"3/80", "1/80", "1/4", "0"},
                                   {"9/80", "3/80", "0", "1/4"}});
  const Coupling b = coupling_maximal(kPx, kPy);
  CHECK(b.matrix() == expected);
  CHECK(b(2, 0) == Rat::parse("0.03750"));
  CHECK(b(3, 0) == Rat::parse("0.11250"));
  CHECK(mismatch_prob(b) == Rat(1, 5));

  const Coupling same = coupling_maximal(kPx, kPx);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(same(a, c) == (a == c ? kPx[a] : Rat(0)));
  }
  CHECK(mismatch_prob(same).is_zero());

  const Coupling t1 = coupling_maximal(fixtures::pairs_px().flatten(), fixtures::pairs_py().flatten());
  CHECK(t1(0, 1) == Rat(4, 45));
  CHECK(t1(8, 3) == Rat(1, 45));
}

TEST_CASE("residuals") {
  const Residuals r = residuals(kPx, kPy);
  // rx = P - min(P,Q), ry = Q - min(P,Q), entry by entry.
  CHECK(r.rx == std::vector<Rat>{Rat(0), Rat(0), Rat(1, 20), Rat(3, 20)});
  CHECK(r.ry == std::vector<Rat>{Rat(3, 20), Rat(1, 20), Rat(0), Rat(0)});
  CHECK(r.mismatch == Rat(1, 5));

  const Residuals same = residuals(kPx, kPx);
  for (const auto& x : same.rx) CHECK(x.is_zero());
  for (const auto& x : same.ry) CHECK(x.is_zero());
  CHECK(same.mismatch.is_zero());

  const Residuals disjoint = residuals(pmf({1, 0}, 1), pmf({0, 1}, 1));
  CHECK(disjoint.rx == std::vector<Rat>{Rat(1), Rat(0)});
  CHECK(disjoint.ry == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(disjoint.mismatch == Rat(1));
}

TEST_CASE("mismatch probability and lemma audit of the three worked cases") {
  const Coupling a = coupling_independent(kPx, kPy);
  const Coupling b = coupling_maximal(kPx, kPy);
  const Coupling c = coupling_validate(fixtures::single_alternate(), kPx, kPy);
  CHECK(mismatch_prob(a) == Rat(3, 4));
  CHECK(mismatch_prob(b) == Rat(1, 5));
  CHECK(mismatch_prob(c) == Rat(19, 40));

  const auto audit_a = lemma_audit(a);
  CHECK(audit_a.v == Rat(1, 5));
  CHECK(audit_a.holds);
  CHECK_FALSE(audit_a.maximal);
  CHECK(audit_a.gap == Rat(11, 20));

  const auto audit_b = lemma_audit(b);
  CHECK(audit_b.maximal);
  CHECK(audit_b.gap.is_zero());

  const auto audit_c = lemma_audit(c);
  CHECK(audit_c.mismatch == Rat(19, 40));
  CHECK_FALSE(audit_c.maximal);
}

TEST_CASE("property: v <= mismatch for random couplings") {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 7));
    const Pmf p = testing::random_pmf(rng, n);
    const Pmf q = testing::random_pmf(rng, n);
    const Coupling c = testing::random_coupling(rng, p, q);
    const auto audit = lemma_audit(c);
    CHECK(audit.holds);
    for (std::size_t a = 0; a < n; ++a) CHECK(c(a, a) <= min(p[a], q[a]));
  }
}

TEST_CASE("property: maximal coupling attains v and residual identities hold") {
  testing::Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 9));
    const Pmf p = testing::random_pmf(rng, n);
    const Pmf q = testing::random_pmf(rng, n);
    const Coupling m = coupling_maximal(p, q);  // validated on construction
    const Rat v = vdist_halfsum(p, q);
    CHECK(mismatch_prob(m) == v);

    const Residuals r = residuals(p, q);
    Rat sx;
    Rat sy;
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(r.rx[a].sign() >= 0);
      CHECK(r.ry[a].sign() >= 0);
      CHECK((r.rx[a] * r.ry[a]).is_zero());
      sx += r.rx[a];
      sy += r.ry[a];
    }
    CHECK(sx == r.mismatch);
    CHECK(sy == r.mismatch);
    CHECK(r.mismatch == v);
  }
}

TEST_CASE("property: independence with an interior symbol is strictly suboptimal") {
  testing::Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 8));
    const Pmf p = testing::random_interior_pmf(rng, n);
    const Pmf q = testing::random_interior_pmf(rng, n);
    CHECK(vdist_halfsum(p, q) < mismatch_prob(coupling_independent(p, q)));
  }
}

TEST_CASE("uniform keys: v = 0 and independent mismatch = 1 - 1/N") {
  for (std::int64_t n : {2, 3, 4, 7, 16}) {
    const Pmf u = Pmf::uniform(Alphabet::numbered(static_cast<std::size_t>(n)));
    CHECK(vdist_halfsum(u, u).is_zero());
    CHECK(mismatch_prob(coupling_independent(u, u)) == Rat(1) - Rat(1, n));
  }
}
