#pragma once

#include <Eigen/Dense>
#include <string_view>

namespace pframes {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute tolerance on eigenvalues for positive-semidefinite checks.
inline constexpr double kTolPsd = 1e-10;
/// Slack allowed in frame-bound and Riesz inequalities.
inline constexpr double kTolIneq = 1e-10;
/// Relative (to the largest eigenvalue) threshold below which an eigenvalue is zero.
inline constexpr double kTolRankRel = 1e-12;

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what);

/// Throws DimensionMismatch unless actual == expected.
void require_dim(Eigen::Index actual, Eigen::Index expected, std::string_view what);

/// Ascending eigenvalues of a symmetric matrix (lower triangle is read).
Vector symmetric_eigenvalues(const Matrix& m);

/// Symmetry residual max |m - m^T|.
double asymmetry(const Matrix& m);

}  // namespace pframes
