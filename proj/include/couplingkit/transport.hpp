#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "couplingkit/coupling.hpp"
#include "couplingkit/distribution.hpp"

namespace couplingkit {

inline constexpr std::size_t kDefaultVertexLimit = 4;

/// Balanced transportation problem over A x A: ship `supply` (rows) to
/// `demand` (columns) at per-unit `cost`. Total mass is 1 on both sides.
class TransportProblem {
 public:
  TransportProblem(Pmf supply, Pmf demand, RatMatrix cost);

  /// Builds from raw masses. Throws UnbalancedProblem if the totals differ
  /// and InvalidDistribution if either side is not a probability vector.
  static TransportProblem from_masses(const Alphabet& alphabet, std::vector<Rat> supply,
                                      std::vector<Rat> demand, RatMatrix cost);

  /// 0/1 mismatch cost: 1 off the diagonal, 0 on it.
  static TransportProblem mismatch(const Pmf& supply, const Pmf& demand);

  const Pmf& supply() const noexcept { return supply_; }
  const Pmf& demand() const noexcept { return demand_; }
  const RatMatrix& cost() const noexcept { return cost_; }
  std::size_t size() const noexcept { return supply_.size(); }

  /// sum_{a,b} cost(a,b) j(a,b)
  Rat objective(const RatMatrix& j) const;

 private:
  Pmf supply_;
  Pmf demand_;
  RatMatrix cost_;
};

/// Row potentials u and column potentials v with u(a) + v(b) <= cost(a,b).
struct DualCertificate {
  std::vector<Rat> u;
  std::vector<Rat> v;
  Rat objective;

  friend bool operator==(const DualCertificate&, const DualCertificate&) = default;
};

/// Basic cells of a transportation basis: a spanning tree of the bipartite
/// row/column graph with 2N-1 edges. Degenerate cells carry zero flow.
struct BasisTree {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
};

struct TransportSolution {
  Coupling coupling;
  DualCertificate certificate;
  BasisTree basis;
  std::size_t pivots = 0;
};

/// Exact transportation simplex. Starts from a least-cost (matrix-minimum) basis and
/// pivots with Bland's rule: the entering cell is the first (row-major) cell
/// with negative reduced cost, the leaving cell the first among ratio-test ties.
TransportSolution solve_transport(const TransportProblem& tp);

struct OracleResult {
  Coupling coupling;
  DualCertificate certificate;
};

/// Minimizes Pr{x != y} over all couplings of P and Q.
OracleResult lp_min_mismatch(const Pmf& p, const Pmf& q);

/// True iff `c` is primal feasible for `tp`, `cert` is dual feasible, and
/// both objectives equal cert.objective exactly. Throws AlphabetMismatch
/// when shapes disagree.
bool certify(const Coupling& c, const DualCertificate& cert, const TransportProblem& tp);

/// All vertices of the transportation polytope, found by trying every set
/// of 2N-1 cells that forms a spanning tree and keeping the nonnegative
/// basic solutions. Duplicates (degenerate bases) are removed; order is
/// deterministic. Throws LimitExceeded when N > max_n.
std::vector<Coupling> vertex_enumerate(const TransportProblem& tp, std::size_t max_n = kDefaultVertexLimit);

}  // namespace couplingkit
