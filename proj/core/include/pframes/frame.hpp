#pragma once

// Finite frames in R^N: frame operator, optimal bounds, analysis/synthesis,
// Gramian and canonical dual.

#include <span>
#include <vector>

#include "pframes/linalg.hpp"

namespace pframes {

/// An ordered family of vectors in R^N together with its frame operator
/// S = sum_n phi_n phi_n^T and optimal bounds alpha = lambda_min(S),
/// beta = lambda_max(S). A family that fails to span R^N is representable
/// (alpha = 0) but is_frame() reports false.
class Frame {
 public:
  /// Throws InvalidArgument (empty), DimensionMismatch, NonFinite, or
  /// NotAFrame when every vector is zero (beta would be 0).
  static Frame build(std::span<const Vector> vectors);

  /// Columns of `columns` are the frame vectors.
  static Frame from_columns(Matrix columns);

  Eigen::Index dim() const noexcept { return vectors_.rows(); }
  Eigen::Index size() const noexcept { return vectors_.cols(); }

  /// N x n_frame matrix whose columns are the frame vectors.
  const Matrix& vectors() const noexcept { return vectors_; }
  Vector vector(Eigen::Index k) const { return vectors_.col(k); }

  const Matrix& frame_operator() const noexcept { return frame_operator_; }
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }

  /// Eigenvalues of S below this are treated as zero.
  double rank_tolerance() const noexcept { return kTolRankRel * upper_; }
  bool is_frame() const noexcept { return lower_ > rank_tolerance(); }
  bool is_tight(double rel_tol = 1e-10) const noexcept;
  bool is_parseval(double tol = 1e-10) const noexcept;

 private:
  explicit Frame(Matrix columns);

  Matrix vectors_;
  Matrix frame_operator_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// Coefficients <x, phi_n>.
Vector analysis(const Frame& frame, const Vector& x);

/// sum_n c_n phi_n.
Vector synthesis(const Frame& frame, const Vector& c);

/// Symmetric PSD matrix of pairwise inner products <phi_j, phi_k>.
class GramMatrix {
 public:
  /// Validates symmetry (1e-12) and PSD (eigenvalues >= -kTolPsd);
  /// throws InvalidArgument otherwise.
  static GramMatrix from_matrix(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  double operator()(Eigen::Index j, Eigen::Index k) const { return entries_(j, k); }

  /// Ascending spectrum.
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }

  /// The leading n x n block G_n.
  GramMatrix leading(Eigen::Index n) const;

  /// det(G_1), ..., det(G_size()).
  Vector leading_minors() const;

 private:
  GramMatrix(Matrix entries, Vector eigenvalues)
      : entries_(std::move(entries)), eigenvalues_(std::move(eigenvalues)) {}

  Matrix entries_;
  Vector eigenvalues_;
};

GramMatrix gram(const Frame& frame);

struct RieszCheck {
  double lhs = 0.0;    // c^T G c
  double bound = 0.0;  // beta * |c|^2
  bool ok = false;
};

/// Upper Riesz inequality c^T G c <= beta |c|^2 (within kTolIneq).
RieszCheck verify_riesz_upper(const Frame& frame, const Vector& c);

/// Canonical dual {S^{-1} phi_n}. Throws NotAFrame if alpha <= rank_tolerance().
Frame dual_frame(const Frame& frame);

}  // namespace pframes
