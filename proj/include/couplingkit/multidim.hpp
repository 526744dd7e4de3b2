#pragma once

#include "couplingkit/coupling.hpp"
#include "couplingkit/distribution.hpp"

namespace couplingkit {

/// Coupling of two Pmf2s, i.e. a distribution on (x1,x2,y1,y2).
///
/// Stored as a one-dimensional Coupling over the product alphabet A^2, where
/// pair (a,b) sits at index a*N + b. All checks reduce to that representation.
class Coupling4 {
 public:
  /// `flat` is the N^2 x N^2 matrix indexed [(x1,x2)][(y1,y2)].
  static Coupling4 validate(RatMatrix flat, const Pmf2& left, const Pmf2& right);

  const Alphabet& alphabet() const noexcept { return left_.alphabet(); }
  std::size_t size() const noexcept { return left_.size(); }
  const Rat& operator()(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2) const {
    const std::size_t n = size();
    return flat_(x1 * n + x2, y1 * n + y2);
  }
  const Pmf2& left() const noexcept { return left_; }
  const Pmf2& right() const noexcept { return right_; }
  const Coupling& flat() const noexcept { return flat_; }

  friend bool operator==(const Coupling4&, const Coupling4&) = default;

 private:
  Coupling4(Coupling flat, Pmf2 left, Pmf2 right)
      : flat_(std::move(flat)), left_(std::move(left)), right_(std::move(right)) {}

  Coupling flat_;
  Pmf2 left_;
  Pmf2 right_;
};

inline Coupling4 coupling4_validate(RatMatrix flat, const Pmf2& p2, const Pmf2& q2) {
  return Coupling4::validate(std::move(flat), p2, q2);
}

/// v over the product alphabet.
Rat vdist2(const Pmf2& p2, const Pmf2& q2);

/// Product-residual maximal coupling applied to the flattened pair alphabet.
Coupling4 coupling4_maximal(const Pmf2& p2, const Pmf2& q2);

/// (X1,X2) independent of (Y1,Y2).
Coupling4 coupling4_independent(const Pmf2& p2, const Pmf2& q2);

/// Coupling supported on x1 = x2 = y1 with j(a,a,a,b) = Q2(a,b).
///
/// Requires P2 diagonal and P2(a,a) = sum_b Q2(a,b) for every a; otherwise
/// throws ConstraintInfeasible naming the offending symbol.
Coupling4 coupling4_constrained(const Pmf2& p2, const Pmf2& q2);

struct MismatchComponents {
  Rat pair;   // Pr{(x1,x2) != (y1,y2)}
  Rat coord;  // Pr{x2 != y2}
};

MismatchComponents mismatch_components(const Coupling4& c);

}  // namespace couplingkit
