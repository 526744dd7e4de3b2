#include "couplingkit/coupling.hpp"

#include "couplingkit/metrics.hpp"

namespace couplingkit {

const char* to_string(CouplingFault fault) {
  switch (fault) {
    case CouplingFault::Shape:
      return "shape";
    case CouplingFault::NegativeEntry:
      return "negative-entry";
    case CouplingFault::Mass:
      return "mass";
    case CouplingFault::RowMarginal:
      return "row-marginal";
    case CouplingFault::ColumnMarginal:
      return "column-marginal";
  }
  return "unknown";
}

InvalidCoupling::InvalidCoupling(CouplingFault fault, std::string symbol, const std::string& detail)
    : Error(std::string("invalid coupling (") + to_string(fault) + (symbol.empty() ? "" : " at " + symbol) +
            "): " + detail),
      fault_(fault),
      symbol_(std::move(symbol)) {}

Coupling Coupling::validate(RatMatrix j, const Pmf& left, const Pmf& right) {
  require_same_alphabet(left.alphabet(), right.alphabet(), "coupling");
  const auto& alpha = left.alphabet();
  const std::size_t n = alpha.size();
  if (j.rows() != n || j.cols() != n) {
    throw InvalidCoupling(CouplingFault::Shape, "",
                          "matrix is " + std::to_string(j.rows()) + "x" + std::to_string(j.cols()) +
                              ", alphabet has " + std::to_string(n) + " symbols");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (j(x, y).sign() < 0) {
        throw InvalidCoupling(CouplingFault::NegativeEntry, "(" + alpha[x] + "," + alpha[y] + ")",
                              "entry " + j(x, y).str());
      }
    }
  }
  if (auto total = j.sum(); total != Rat(1)) {
    throw InvalidCoupling(CouplingFault::Mass, "", "entries sum to " + total.str());
  }
  const auto rows = j.row_sums();
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x] != left[x]) {
      throw InvalidCoupling(CouplingFault::RowMarginal, alpha[x],
                            "row sums to " + rows[x].str() + ", expected " + left[x].str());
    }
  }
  const auto cols = j.col_sums();
  for (std::size_t y = 0; y < n; ++y) {
    if (cols[y] != right[y]) {
      throw InvalidCoupling(CouplingFault::ColumnMarginal, alpha[y],
                            "column sums to " + cols[y].str() + ", expected " + right[y].str());
    }
  }
  return Coupling(std::move(j), left, right);
}

Coupling coupling_independent(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "coupling_independent");
  const std::size_t n = p.size();
  RatMatrix j(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) j(x, y) = p[x] * q[y];
  }
  return Coupling::validate(std::move(j), p, q);
}

Residuals residuals(const Pmf& p, const Pmf& q) {
  require_same_alphabet(p.alphabet(), q.alphabet(), "residuals");
  const std::size_t n = p.size();
  Residuals r{std::vector<Rat>(n), std::vector<Rat>(n), Rat()};
  for (std::size_t a = 0; a < n; ++a) {
    const Rat& diag = min(p[a], q[a]);
    r.rx[a] = p[a] - diag;
    r.ry[a] = q[a] - diag;
    r.mismatch += r.rx[a];
  }
  return r;
}

Coupling coupling_maximal(const Pmf& p, const Pmf& q) {
  const Residuals r = residuals(p, q);
  const std::size_t n = p.size();
  RatMatrix j(n, n);
  for (std::size_t a = 0; a < n; ++a) j(a, a) = min(p[a], q[a]);
  if (!r.mismatch.is_zero()) {
    for (std::size_t a = 0; a < n; ++a) {
      if (r.rx[a].is_zero()) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b) j(a, b) = r.rx[a] * r.ry[b] / r.mismatch;
      }
    }
  }
  return Coupling::validate(std::move(j), p, q);
}

Rat mismatch_prob(const Coupling& c) {
  Rat diag;
  for (std::size_t a = 0; a < c.size(); ++a) diag += c(a, a);
  return Rat(1) - diag;
}

LemmaAudit lemma_audit(const Coupling& c) {
  LemmaAudit audit;
  audit.v = vdist_halfsum(c.left(), c.right());
  audit.mismatch = mismatch_prob(c);
  audit.holds = audit.v <= audit.mismatch;
  audit.maximal = audit.v == audit.mismatch;
  audit.gap = audit.mismatch - audit.v;
  if (!audit.holds) {
    throw CorruptedCoupling("coupling violates v <= Pr{x != y}: v=" + audit.v.str() +
                            ", mismatch=" + audit.mismatch.str());
  }
  return audit;
}

}  // namespace couplingkit
