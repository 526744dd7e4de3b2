#include "couplingkit/transport.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "couplingkit/errors.hpp"

namespace couplingkit {

TransportProblem::TransportProblem(Pmf supply, Pmf demand, RatMatrix cost)
    : supply_(std::move(supply)), demand_(std::move(demand)), cost_(std::move(cost)) {
  require_same_alphabet(supply_.alphabet(), demand_.alphabet(), "transport");
  if (cost_.rows() != size() || cost_.cols() != size()) {
    throw AlphabetMismatch("transport: cost matrix shape does not match alphabet size");
  }
}

TransportProblem TransportProblem::from_masses(const Alphabet& alphabet, std::vector<Rat> supply,
                                               std::vector<Rat> demand, RatMatrix cost) {
  const Rat s = std::accumulate(supply.begin(), supply.end(), Rat());
  const Rat d = std::accumulate(demand.begin(), demand.end(), Rat());
  if (s != d) throw UnbalancedProblem("transport: supply totals " + s.str() + " but demand totals " + d.str());
  return TransportProblem(Pmf(alphabet, std::move(supply)), Pmf(alphabet, std::move(demand)), std::move(cost));
}

TransportProblem TransportProblem::mismatch(const Pmf& supply, const Pmf& demand) {
  const std::size_t n = supply.size();
  RatMatrix cost(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) cost(a, b) = Rat(a == b ? 0 : 1);
  }
  return TransportProblem(supply, demand, std::move(cost));
}

Rat TransportProblem::objective(const RatMatrix& j) const {
  Rat total;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (!j(a, b).is_zero()) total += cost_(a, b) * j(a, b);
    }
  }
  return total;
}

namespace {

struct BasicCell {
  std::size_t row;
  std::size_t col;
  Rat flow;
};

// Bipartite graph nodes: rows are [0, n), columns are [n, 2n).
class BasisGraph {
 public:
  BasisGraph(std::size_t n, const std::vector<BasicCell>& cells) : n_(n), adj_(2 * n) {
    for (std::size_t e = 0; e < cells.size(); ++e) {
      adj_[cells[e].row].push_back(e);
      adj_[n + cells[e].col].push_back(e);
    }
  }

  std::size_t other(const BasicCell& cell, std::size_t node) const {
    return node == cell.row ? n_ + cell.col : cell.row;
  }

  // Edge indices on the tree path from `from` to `to`, in walking order.
  std::vector<std::size_t> path(const std::vector<BasicCell>& cells, std::size_t from, std::size_t to) const {
    std::vector<std::optional<std::size_t>> via(2 * n_);
    std::vector<bool> seen(2 * n_, false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      if (node == to) break;
      for (std::size_t e : adj_[node]) {
        const std::size_t next = other(cells[e], node);
        if (!seen[next]) {
          seen[next] = true;
          via[next] = e;
          queue.push_back(next);
        }
      }
    }
    std::vector<std::size_t> edges;
    for (std::size_t node = to; node != from;) {
      const std::size_t e = *via[node];
      edges.push_back(e);
      node = other(cells[e], node);
    }
    return {edges.rbegin(), edges.rend()};
  }

  // Potentials with u(0) = 0 and u(r) + v(c) = cost(r,c) on every basic cell.
  void potentials(const std::vector<BasicCell>& cells, const RatMatrix& cost, std::vector<Rat>& u,
                  std::vector<Rat>& v) const {
    std::vector<bool> known(2 * n_, false);
    u.assign(n_, Rat());
    v.assign(n_, Rat());
    known[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t e : adj_[node]) {
        const auto& cell = cells[e];
        const std::size_t next = other(cell, node);
        if (known[next]) continue;
        known[next] = true;
        if (next < n_) {
          u[cell.row] = cost(cell.row, cell.col) - v[cell.col];
        } else {
          v[cell.col] = cost(cell.row, cell.col) - u[cell.row];
        }
        queue.push_back(next);
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Matrix-minimum start: visit cells by (cost, row, col) and saturate each
// one. Every allocation retires exactly one row or column, except the last
// which retires both, so the 2N-1 cells always form a spanning tree (some
// may carry zero flow). On mismatch costs this fills the diagonal first and
// usually needs no pivots at all.
std::vector<BasicCell> least_cost_basis(const TransportProblem& tp) {
  const std::size_t n = tp.size();
  const RatMatrix& cost = tp.cost();
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost(a / n, a % n) < cost(b / n, b % n); });

  std::vector<Rat> s = tp.supply().probs();
  std::vector<Rat> d = tp.demand().probs();
  std::vector<bool> row_done(n, false);
  std::vector<bool> col_done(n, false);
  std::size_t rows_left = n;
  std::size_t cols_left = n;
  std::vector<BasicCell> cells;
  cells.reserve(2 * n - 1);
  for (std::size_t k : order) {
    const std::size_t r = k / n;
    const std::size_t c = k % n;
    if (row_done[r] || col_done[c]) continue;
    Rat x = min(s[r], d[c]);
    s[r] -= x;
    d[c] -= x;
    cells.push_back({r, c, std::move(x)});
    if (rows_left == 1 && cols_left == 1) break;
    if (s[r].is_zero() && rows_left > 1) {
      row_done[r] = true;
      --rows_left;
    } else {
      col_done[c] = true;
      --cols_left;
    }
  }
  return cells;
}

}  // namespace

TransportSolution solve_transport(const TransportProblem& tp) {
  const std::size_t n = tp.size();
  const RatMatrix& cost = tp.cost();
  std::vector<BasicCell> cells = least_cost_basis(tp);
  std::vector<bool> basic(n * n, false);
  for (const auto& c : cells) basic[c.row * n + c.col] = true;

  std::vector<Rat> u;
  std::vector<Rat> v;
  std::size_t pivots = 0;
  for (;;) {
    BasisGraph graph(n, cells);
    graph.potentials(cells, cost, u, v);

    std::optional<std::pair<std::size_t, std::size_t>> entering;
    for (std::size_t r = 0; r < n && !entering; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (basic[r * n + c]) continue;
        if (cost(r, c) < u[r] + v[c]) {
          entering = {r, c};
          break;
        }
      }
    }
    if (!entering) break;

    const auto [er, ec] = *entering;
    // Cycle: entering cell gains theta, path cells alternate -, +, -, ...
    const auto path = graph.path(cells, er, n + ec);
    std::optional<std::size_t> leaving;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const auto& cell = cells[path[k]];
      if (!leaving) {
        leaving = path[k];
        continue;
      }
      const auto& best = cells[*leaving];
      if (cell.flow < best.flow ||
          (cell.flow == best.flow && cell.row * n + cell.col < best.row * n + best.col)) {
        leaving = path[k];
      }
    }
    const Rat theta = cells[*leaving].flow;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) {
        cells[path[k]].flow -= theta;
      } else {
        cells[path[k]].flow += theta;
      }
    }
    auto& out = cells[*leaving];
    basic[out.row * n + out.col] = false;
    basic[er * n + ec] = true;
    out = BasicCell{er, ec, theta};
    ++pivots;
  }

  RatMatrix j(n, n);
  BasisTree tree;
  for (const auto& c : cells) {
    j(c.row, c.col) = c.flow;
    tree.cells.emplace_back(c.row, c.col);
  }
  Rat dual_objective;
  for (std::size_t a = 0; a < n; ++a) dual_objective += u[a] * tp.supply()[a] + v[a] * tp.demand()[a];

  Coupling coupling = Coupling::validate(std::move(j), tp.supply(), tp.demand());
  return TransportSolution{std::move(coupling), DualCertificate{std::move(u), std::move(v), dual_objective},
                           std::move(tree), pivots};
}

OracleResult lp_min_mismatch(const Pmf& p, const Pmf& q) {
  auto sol = solve_transport(TransportProblem::mismatch(p, q));
  return OracleResult{std::move(sol.coupling), std::move(sol.certificate)};
}

bool certify(const Coupling& c, const DualCertificate& cert, const TransportProblem& tp) {
  const std::size_t n = tp.size();
  if (c.size() != n || cert.u.size() != n || cert.v.size() != n) {
    throw AlphabetMismatch("certify: coupling, certificate and problem sizes disagree");
  }
  require_same_alphabet(c.alphabet(), tp.supply().alphabet(), "certify");

  // Primal feasibility; Coupling already guarantees nonnegativity and its own marginals.
  if (!(c.left() == tp.supply()) || !(c.right() == tp.demand())) return false;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (cert.u[a] + cert.v[b] > tp.cost()(a, b)) return false;
    }
  }

  Rat dual;
  for (std::size_t a = 0; a < n; ++a) dual += cert.u[a] * tp.supply()[a] + cert.v[a] * tp.demand()[a];
  return dual == cert.objective && tp.objective(c.matrix()) == cert.objective;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

// Unique flow on a spanning-tree basis, or nullopt if some flow is negative.
std::optional<RatMatrix> tree_flow(const TransportProblem& tp, const std::vector<std::size_t>& cells) {
  const std::size_t n = tp.size();
  std::vector<Rat> residual(2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    residual[a] = tp.supply()[a];
    residual[n + a] = tp.demand()[a];
  }
  std::vector<std::vector<std::size_t>> adj(2 * n);
  std::vector<std::size_t> degree(2 * n, 0);
  for (std::size_t e = 0; e < cells.size(); ++e) {
    adj[cells[e] / n].push_back(e);
    adj[n + cells[e] % n].push_back(e);
    ++degree[cells[e] / n];
    ++degree[n + cells[e] % n];
  }
  std::vector<bool> removed(cells.size(), false);
  std::deque<std::size_t> leaves;
  for (std::size_t node = 0; node < 2 * n; ++node) {
    if (degree[node] == 1) leaves.push_back(node);
  }

  RatMatrix j(n, n);
  while (!leaves.empty()) {
    const std::size_t leaf = leaves.front();
    leaves.pop_front();
    if (degree[leaf] != 1) continue;
    std::size_t edge = 0;
    for (std::size_t e : adj[leaf]) {
      if (!removed[e]) edge = e;
    }
    const std::size_t row = cells[edge] / n;
    const std::size_t col = cells[edge] % n;
    const std::size_t other = leaf < n ? n + col : row;
    const Rat flow = residual[leaf];
    if (flow.sign() < 0) return std::nullopt;
    j(row, col) = flow;
    residual[leaf] = Rat();
    residual[other] -= flow;
    removed[edge] = true;
    --degree[leaf];
    if (--degree[other] == 1) leaves.push_back(other);
  }
  return j;
}

std::string matrix_key(const RatMatrix& j) {
  std::string key;
  for (const auto& x : j.values()) {
    key += x.str();
    key.push_back(';');
  }
  return key;
}

}  // namespace

std::vector<Coupling> vertex_enumerate(const TransportProblem& tp, std::size_t max_n) {
  const std::size_t n = tp.size();
  if (n > max_n) {
    throw LimitExceeded("vertex enumeration over " + std::to_string(n) + " symbols exceeds limit " +
                        std::to_string(max_n));
  }
  const std::size_t cells = n * n;
  const std::size_t k = 2 * n - 1;

  std::vector<Coupling> vertices;
  std::set<std::string> seen;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    DisjointSets forest(2 * n);
    bool tree = true;
    for (std::size_t cell : pick) {
      if (!forest.unite(cell / n, n + cell % n)) {
        tree = false;
        break;
      }
    }
    if (tree) {
      if (auto j = tree_flow(tp, pick)) {
        if (seen.insert(matrix_key(*j)).second) {
          vertices.push_back(Coupling::validate(std::move(*j), tp.supply(), tp.demand()));
        }
      }
    }

    // Next k-combination of [0, cells) in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == cells - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t t = i; t < k; ++t) pick[t] = pick[t - 1] + 1;
  }
  return vertices;
}

}  // namespace couplingkit
