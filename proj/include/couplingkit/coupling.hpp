#pragma once

#include <optional>
#include <string>
#include <vector>

#include "couplingkit/distribution.hpp"
#include "couplingkit/errors.hpp"

namespace couplingkit {

/// Why a matrix is not a coupling of the given marginals.
enum class CouplingFault { Shape, NegativeEntry, Mass, RowMarginal, ColumnMarginal };

const char* to_string(CouplingFault fault);

class InvalidCoupling : public Error {
 public:
  InvalidCoupling(CouplingFault fault, std::string symbol, const std::string& detail);

  CouplingFault fault() const noexcept { return fault_; }
  /// Offending symbol (row/column label, or "(x,y)" for a cell); empty for mass/shape.
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  CouplingFault fault_;
  std::string symbol_;
};

/// Joint distribution on A x A with prescribed marginals.
/// Row index is x (left marginal), column index is y (right marginal).
/// Instances only exist in validated form.
class Coupling {
 public:
  /// Throws InvalidCoupling naming the first violated constraint, checked in
  /// the order: shape, negative entry, total mass, row marginals, column marginals.
  static Coupling validate(RatMatrix j, const Pmf& left, const Pmf& right);

  const Alphabet& alphabet() const noexcept { return left_.alphabet(); }
  std::size_t size() const noexcept { return j_.rows(); }
  const RatMatrix& matrix() const noexcept { return j_; }
  const Rat& operator()(std::size_t x, std::size_t y) const { return j_(x, y); }
  const Pmf& left() const noexcept { return left_; }
  const Pmf& right() const noexcept { return right_; }

  friend bool operator==(const Coupling&, const Coupling&) = default;

 private:
  Coupling(RatMatrix j, Pmf left, Pmf right) : j_(std::move(j)), left_(std::move(left)), right_(std::move(right)) {}

  RatMatrix j_;
  Pmf left_;
  Pmf right_;
};

inline Coupling coupling_validate(RatMatrix j, const Pmf& p, const Pmf& q) {
  return Coupling::validate(std::move(j), p, q);
}

/// j(a,b) = P(a) Q(b).
Coupling coupling_independent(const Pmf& p, const Pmf& q);

/// Product-residual maximal coupling: j(a,a) = min{P(a),Q(a)} and, when the
/// mismatch m is nonzero, j(a,b) = R_X(a) R_Y(b) / m off the diagonal.
/// With m = 0 the coupling is diagonal.
Coupling coupling_maximal(const Pmf& p, const Pmf& q);

/// Leftover marginal mass after placing min{P(a),Q(a)} on the diagonal.
struct Residuals {
  std::vector<Rat> rx;
  std::vector<Rat> ry;
  Rat mismatch;  // sum rx = sum ry
};

Residuals residuals(const Pmf& p, const Pmf& q);

/// Pr{x != y} = 1 - sum_a j(a,a).
Rat mismatch_prob(const Coupling& c);

struct LemmaAudit {
  Rat v;
  Rat mismatch;
  bool holds = false;    // v <= mismatch
  bool maximal = false;  // v == mismatch
  Rat gap;               // mismatch - v
};

/// Checks v(left,right) <= Pr{x != y}. Throws CorruptedCoupling if it fails.
LemmaAudit lemma_audit(const Coupling& c);

}  // namespace couplingkit
