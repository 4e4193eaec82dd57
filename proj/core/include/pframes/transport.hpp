#pragma once

// Exact discrete optimal transport by the transportation simplex method
// (network simplex on the complete bipartite graph).

#include "pframes/linalg.hpp"

namespace pframes {

/// Coupling matrix with prescribed marginals.
struct TransportPlan {
  Matrix mass;  // rows: source atoms, cols: target atoms

  /// max |row sums - supply|, max |col sums - demand|.
  double marginal_residual(const Vector& supply, const Vector& demand) const;
};

struct TransportSolution {
  TransportPlan plan;
  double cost = 0.0;
  /// Optimal dual potentials: u_i + v_j <= c_ij, with equality on basic cells.
  Vector row_potential;
  Vector col_potential;
  int pivots = 0;
};

/// Minimises sum gamma_ij c_ij over couplings of (supply, demand). Both
/// marginals must be nonnegative with equal totals (relative 1e-9).
/// Throws InvalidArgument on malformed input, SolverFailure if the pivot
/// budget is exhausted.
TransportSolution solve_transport(const Vector& supply, const Vector& demand, const Matrix& cost);

/// Squared Euclidean distances between columns of a and columns of b.
Matrix squared_distance_matrix(const Matrix& a, const Matrix& b);

}  // namespace pframes
