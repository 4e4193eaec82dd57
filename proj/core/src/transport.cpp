#include "pframes/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pframes/error.hpp"

namespace pframes {
namespace {

struct Cell {
  Eigen::Index row;
  Eigen::Index col;
  double flow;
};

// Basis of the transportation simplex: a spanning tree over m row nodes and
// n column nodes (column j is node m + j) with exactly m + n - 1 cells.
class Basis {
 public:
  Basis(Eigen::Index m, Eigen::Index n) : m_(m), n_(n), is_basic_(m, n) { is_basic_.setZero(); }

  void add(Eigen::Index i, Eigen::Index j, double flow) {
    cells_.push_back({i, j, flow});
    is_basic_(i, j) = 1;
  }

  std::vector<Cell>& cells() noexcept { return cells_; }
  bool basic(Eigen::Index i, Eigen::Index j) const { return is_basic_(i, j) != 0; }

  void replace(std::size_t leaving, Eigen::Index i, Eigen::Index j, double flow) {
    is_basic_(cells_[leaving].row, cells_[leaving].col) = 0;
    cells_[leaving] = {i, j, flow};
    is_basic_(i, j) = 1;
  }

  void potentials(const Matrix& cost, Vector& u, Vector& v) const {
    const auto adj = adjacency();
    const double unset = std::numeric_limits<double>::quiet_NaN();
    u = Vector::Constant(m_, unset);
    v = Vector::Constant(n_, unset);
    std::vector<Eigen::Index> stack{0};
    u(0) = 0.0;
    while (!stack.empty()) {
      const Eigen::Index node = stack.back();
      stack.pop_back();
      for (const std::size_t e : adj[static_cast<std::size_t>(node)]) {
        const Cell& c = cells_[e];
        if (node < m_ && std::isnan(v(c.col))) {
          v(c.col) = cost(c.row, c.col) - u(c.row);
          stack.push_back(m_ + c.col);
        } else if (node >= m_ && std::isnan(u(c.row))) {
          u(c.row) = cost(c.row, c.col) - v(c.col);
          stack.push_back(c.row);
        }
      }
    }
    if (u.hasNaN() || v.hasNaN()) throw Error(Errc::SolverFailure, "transport basis is not a spanning tree");
  }

  /// Basic cells on the tree path from column node `col` to row node `row`, in that order.
  std::vector<std::size_t> path(Eigen::Index row, Eigen::Index col) const {
    const auto adj = adjacency();
    const std::size_t nodes = static_cast<std::size_t>(m_ + n_);
    std::vector<std::ptrdiff_t> via(nodes, -1);
    std::vector<bool> seen(nodes, false);
    std::vector<Eigen::Index> stack{row};
    seen[static_cast<std::size_t>(row)] = true;
    const Eigen::Index target = m_ + col;
    while (!stack.empty() && !seen[static_cast<std::size_t>(target)]) {
      const Eigen::Index node = stack.back();
      stack.pop_back();
      for (const std::size_t e : adj[static_cast<std::size_t>(node)]) {
        const Cell& c = cells_[e];
        const Eigen::Index other = node < m_ ? m_ + c.col : c.row;
        if (!seen[static_cast<std::size_t>(other)]) {
          seen[static_cast<std::size_t>(other)] = true;
          via[static_cast<std::size_t>(other)] = static_cast<std::ptrdiff_t>(e);
          stack.push_back(other);
        }
      }
    }
    std::vector<std::size_t> out;
    Eigen::Index node = target;
    while (node != row) {
      const auto e = via[static_cast<std::size_t>(node)];
      if (e < 0) throw Error(Errc::SolverFailure, "transport basis is disconnected");
      const Cell& c = cells_[static_cast<std::size_t>(e)];
      out.push_back(static_cast<std::size_t>(e));
      node = node < m_ ? m_ + c.col : c.row;
    }
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(m_ + n_));
    for (std::size_t e = 0; e < cells_.size(); ++e) {
      adj[static_cast<std::size_t>(cells_[e].row)].push_back(e);
      adj[static_cast<std::size_t>(m_ + cells_[e].col)].push_back(e);
    }
    return adj;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  std::vector<Cell> cells_;
  Eigen::Matrix<unsigned char, Eigen::Dynamic, Eigen::Dynamic> is_basic_;
};

Basis northwest_corner(const Vector& supply, const Vector& demand) {
  const Eigen::Index m = supply.size();
  const Eigen::Index n = demand.size();
  Basis basis(m, n);
  Vector ra = supply;
  Vector rb = demand;
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  while (true) {
    double q = std::min(ra(i), rb(j));
    if (i == m - 1 && j == n - 1) q = std::max(ra(i), rb(j));  // absorb rounding leftovers
    basis.add(i, j, q);
    ra(i) -= q;
    rb(j) -= q;
    if (i == m - 1 && j == n - 1) break;
    if (j == n - 1 || (i < m - 1 && ra(i) <= rb(j))) {
      ++i;
    } else {
      ++j;
    }
  }
  return basis;
}

}  // namespace

double TransportPlan::marginal_residual(const Vector& supply, const Vector& demand) const {
  const double rows = (mass.rowwise().sum() - supply).cwiseAbs().maxCoeff();
  const double cols = (mass.colwise().sum().transpose() - demand).cwiseAbs().maxCoeff();
  return std::max(rows, cols);
}

TransportSolution solve_transport(const Vector& supply, const Vector& demand, const Matrix& cost) {
  const Eigen::Index m = supply.size();
  const Eigen::Index n = demand.size();
  if (m == 0 || n == 0) throw Error(Errc::InvalidArgument, "transport marginals must be nonempty");
  if (cost.rows() != m || cost.cols() != n) {
    throw Error(Errc::DimensionMismatch, "cost matrix shape does not match marginals");
  }
  require_finite(cost, "transport cost");
  require_finite(supply, "supply");
  require_finite(demand, "demand");
  if (supply.minCoeff() < 0.0 || demand.minCoeff() < 0.0) {
    throw Error(Errc::InvalidArgument, "transport marginals must be nonnegative");
  }
  const double total = supply.sum();
  if (std::abs(total - demand.sum()) > 1e-9 * std::max(1.0, total)) {
    throw Error(Errc::InvalidArgument, "transport marginals have different total mass");
  }

  Basis basis = northwest_corner(supply, demand);
  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * scale;
  const int max_pivots = static_cast<int>(50 * (m + n) * std::max(m, n) + 1000);
  // After this many consecutive zero-step pivots switch to Bland's rule.
  constexpr int kDegenerateLimit = 32;

  TransportSolution out;
  Vector u;
  Vector v;
  int degenerate_run = 0;
  for (;;) {
    basis.potentials(cost, u, v);
    const bool bland = degenerate_run >= kDegenerateLimit;
    Eigen::Index p = -1;
    Eigen::Index q = -1;
    double best = -eps;
    for (Eigen::Index i = 0; i < m && !(bland && p >= 0); ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (basis.basic(i, j)) continue;
        const double r = cost(i, j) - u(i) - v(j);
        if (r < best) {
          best = r;
          p = i;
          q = j;
          if (bland) break;
        }
      }
    }
    if (p < 0) break;
    if (++out.pivots > max_pivots) throw Error(Errc::SolverFailure, "transport simplex exceeded pivot budget");

    auto& cells = basis.cells();
    const auto cycle = basis.path(p, q);
    // cycle[0] touches column q and loses mass; signs alternate from there.
    std::size_t leaving = cycle[0];
    double theta = cells[cycle[0]].flow;
    for (std::size_t k = 0; k < cycle.size(); k += 2) {
      const Cell& c = cells[cycle[k]];
      const bool better = c.flow < theta;
      const bool tie_lower = bland && c.flow == theta &&
                             std::pair(c.row, c.col) < std::pair(cells[leaving].row, cells[leaving].col);
      if (better || tie_lower) {
        theta = c.flow;
        leaving = cycle[k];
      }
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Cell& c = cells[cycle[k]];
      c.flow = (k % 2 == 0) ? std::max(0.0, c.flow - theta) : c.flow + theta;
    }
    basis.replace(leaving, p, q, theta);
    degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
  }

  out.plan.mass = Matrix::Zero(m, n);
  for (const Cell& c : basis.cells()) out.plan.mass(c.row, c.col) += c.flow;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) acc += out.plan.mass(i, j) * cost(i, j);
  }
  out.cost = acc;
  out.row_potential = u;
  out.col_potential = v;
  return out;
}

Matrix squared_distance_matrix(const Matrix& a, const Matrix& b) {
  require_dim(b.rows(), a.rows(), "atom dimension");
  Matrix d(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) d(i, j) = (a.col(i) - b.col(j)).squaredNorm();
  }
  return d;
}

}  // namespace pframes
