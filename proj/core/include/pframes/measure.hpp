#pragma once

// Finitely supported probability measures on R^N and the probabilistic
// frame operators built from them.

#include <span>
#include <vector>

#include "pframes/linalg.hpp"
#include "pframes/transport.hpp"

namespace pframes {

/// Weighted atoms with strictly positive weights summing to one.
/// Identical atoms are merged (weights added) in first-occurrence order.
class DiscreteMeasure {
 public:
  /// Throws InvalidMeasure unless weights are positive and sum to 1 within
  /// 1e-12; DimensionMismatch / NonFinite on bad atoms.
  DiscreteMeasure(std::span<const Vector> atoms, std::span<const double> weights);

  /// Divides weights by their sum first.
  static DiscreteMeasure normalized(std::span<const Vector> atoms, std::span<const double> weights);

  /// Equal weight on every atom.
  static DiscreteMeasure uniform(std::span<const Vector> atoms);

  static DiscreteMeasure point_mass(const Vector& atom);

  Eigen::Index dim() const noexcept { return atoms_.rows(); }
  Eigen::Index size() const noexcept { return atoms_.cols(); }

  /// N x size() matrix, one atom per column.
  const Matrix& atoms() const noexcept { return atoms_; }
  const Vector& weights() const noexcept { return weights_; }

 private:
  DiscreteMeasure(Matrix atoms, Vector weights) : atoms_(std::move(atoms)), weights_(std::move(weights)) {}
  static DiscreteMeasure make(std::span<const Vector> atoms, std::span<const double> weights, bool normalize);

  Matrix atoms_;
  Vector weights_;
};

/// Values of a function on the atoms of a measure (an element of L^2(mu)).
using FunctionTable = Vector;

struct MeasureFrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool is_probabilistic_frame() const noexcept { return lower > kTolRankRel * upper && upper > 0.0; }
  bool is_tight(double rel_tol = 1e-10) const noexcept {
    return is_probabilistic_frame() && (upper - lower) <= rel_tol * upper;
  }
};

/// S_mu = sum_i w_i y_i y_i^T.
Matrix prob_frame_operator(const DiscreteMeasure& mu);

MeasureFrameBounds measure_frame_bounds(const DiscreteMeasure& mu);

/// M_2^2(mu) = sum_i w_i |y_i|^2.
double second_moment(const DiscreteMeasure& mu);

/// x -> (<x, y_i>)_i.
FunctionTable prob_analysis(const DiscreteMeasure& mu, const Vector& x);

/// f -> sum_i w_i f_i y_i.
Vector prob_synthesis(const DiscreteMeasure& mu, const FunctionTable& f);

/// (G_mu f)(y_j) = sum_i w_i <y_j, y_i> f_i.
FunctionTable prob_gramian_apply(const DiscreteMeasure& mu, const FunctionTable& f);

/// |f|^2 in L^2(mu).
double l2_norm_squared(const DiscreteMeasure& mu, const FunctionTable& f);

/// f(n) = int <b_n, y>^2 dmu(y) for the standard basis b_n, n = 1..n_max,
/// taken as 0 beyond the ambient dimension. Entry n-1 holds f(n).
Vector lower_bound_decay(const DiscreteMeasure& mu, Eigen::Index n_max);

struct Wasserstein2 {
  double distance = 0.0;
  TransportSolution transport;
};

/// Exact 2-Wasserstein distance with its optimal coupling.
Wasserstein2 wasserstein2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace pframes
