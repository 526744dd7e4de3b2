#include "couplingkit/multidim.hpp"

#include "couplingkit/metrics.hpp"

namespace couplingkit {

Coupling4 Coupling4::validate(RatMatrix flat, const Pmf2& left, const Pmf2& right) {
  require_same_alphabet(left.alphabet(), right.alphabet(), "coupling4");
  Coupling c = Coupling::validate(std::move(flat), left.flatten(), right.flatten());
  return Coupling4(std::move(c), left, right);
}

Rat vdist2(const Pmf2& p2, const Pmf2& q2) {
  require_same_alphabet(p2.alphabet(), q2.alphabet(), "vdist2");
  return vdist_halfsum(p2.flatten(), q2.flatten());
}

Coupling4 coupling4_maximal(const Pmf2& p2, const Pmf2& q2) {
  require_same_alphabet(p2.alphabet(), q2.alphabet(), "coupling4_maximal");
  Coupling c = coupling_maximal(p2.flatten(), q2.flatten());
  return Coupling4::validate(c.matrix(), p2, q2);
}

Coupling4 coupling4_independent(const Pmf2& p2, const Pmf2& q2) {
  require_same_alphabet(p2.alphabet(), q2.alphabet(), "coupling4_independent");
  Coupling c = coupling_independent(p2.flatten(), q2.flatten());
  return Coupling4::validate(c.matrix(), p2, q2);
}

Coupling4 coupling4_constrained(const Pmf2& p2, const Pmf2& q2) {
  require_same_alphabet(p2.alphabet(), q2.alphabet(), "coupling4_constrained");
  const auto& alpha = p2.alphabet();
  const std::size_t n = alpha.size();

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && !p2(a, b).is_zero()) {
        throw ConstraintInfeasible("(" + alpha[a] + "," + alpha[b] + ")",
                                   "X1=X2 requires a diagonal P_X1X2, found " + p2(a, b).str());
      }
    }
  }
  const auto q_first = q2.matrix().row_sums();
  for (std::size_t a = 0; a < n; ++a) {
    if (p2(a, a) != q_first[a]) {
      throw ConstraintInfeasible(alpha[a], "X1=Y1 requires P_X1X2(a,a) = P_Y1(a), found " + p2(a, a).str() +
                                               " vs " + q_first[a].str());
    }
  }

  RatMatrix flat(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) flat(a * n + a, a * n + b) = q2(a, b);
  }
  return Coupling4::validate(std::move(flat), p2, q2);
}

MismatchComponents mismatch_components(const Coupling4& c) {
  const std::size_t n = c.size();
  Rat pair_agree;
  Rat coord_agree;
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      pair_agree += c(x1, x2, x1, x2);
      for (std::size_t y1 = 0; y1 < n; ++y1) coord_agree += c(x1, x2, y1, x2);
    }
  }
  return {Rat(1) - pair_agree, Rat(1) - coord_agree};
}

}  // namespace couplingkit
