#pragma once

// Gaussian white noise truncated to the first D coordinates of a fixed
// orthonormal basis, and Monte-Carlo estimators checked against the closed
// forms of the isometry, characteristic functional, moments, covariance and
// frame decomposition.

#include <cstdint>
#include <vector>

#include "pframes/frame.hpp"

namespace pframes {

/// M samples omega in R^D with i.i.d. N(0,1) coordinates, stored one sample
/// per column. Coordinate (m, d) is a pure function of (seed, m, d).
class WhiteNoiseEnsemble {
 public:
  /// Throws InvalidArgument unless dim >= 1 and samples >= 2.
  WhiteNoiseEnsemble(Eigen::Index dim, Eigen::Index samples, std::uint64_t seed);

  Eigen::Index dim() const noexcept { return samples_.rows(); }
  Eigen::Index sample_count() const noexcept { return samples_.cols(); }
  std::uint64_t seed() const noexcept { return seed_; }

  const Matrix& samples() const noexcept { return samples_; }
  auto sample(Eigen::Index m) const { return samples_.col(m); }

  /// Per-coordinate mean within 5/sqrt(M) of 0 and variance within
  /// 5*sqrt(2/M) of 1.
  bool within_sanity_band() const;

 private:
  Matrix samples_;
  std::uint64_t seed_;
};

/// Result of comparing a Monte-Carlo mean with its closed-form target.
struct McEstimate {
  double value = 0.0;
  double target = 0.0;
  double std_error = 0.0;
  std::int64_t sample_count = 0;
  /// (value - target) / std_error; 0 when std_error == 0 and value matches
  /// target to 1e-12, +-inf when it does not.
  double z_score = 0.0;

  bool within(double z_max) const noexcept;
};

McEstimate make_estimate(double value, double std_error, std::int64_t count, double target);

/// Real and imaginary parts of a complex-valued estimate.
struct ComplexMcEstimate {
  McEstimate real;
  McEstimate imag;

  double max_abs_z() const noexcept;
};

/// Truncated pairing sum_n x_n omega_n, x zero-padded to omega's length.
/// Throws DimensionExceedsTruncation if x is longer than omega.
double pairing(const Vector& x, const Eigen::Ref<const Vector>& omega);

/// <x, omega_m> for every sample.
Vector pair_all(const Vector& x, const WhiteNoiseEnsemble& ens);

/// Mean of <x, omega>^2 against |x|^2.
McEstimate ito_isometry_check(const Vector& x, const WhiteNoiseEnsemble& ens);

/// Mean of exp(i <x, omega>) against exp(-|x|^2 / 2) + 0i.
ComplexMcEstimate char_functional_check(const Vector& x, const WhiteNoiseEnsemble& ens);

enum class MomentParity { Even, Odd };

inline constexpr int kMaxMomentK = 4;

/// Even: E<x,.>^{2k} = (2k-1)!! |x|^{2k}. Odd: E<x,.>^{2k+1} = 0.
/// Requires 1 <= k <= 4 (KTooLarge above, InvalidArgument below).
McEstimate moment_check(const Vector& x, int k, MomentParity parity, const WhiteNoiseEnsemble& ens);

/// (2k-1)!!, with (-1)!! = 1.
double double_factorial_odd(int k);

/// M x n_frame matrix, entry (m, k) = <phi_k, omega_m>.
Matrix gaussian_process_from_frame(const Frame& frame, const WhiteNoiseEnsemble& ens);

/// (1/M) X^T X for a zero-mean sample matrix X (rows are samples).
Matrix empirical_covariance(const Matrix& process);

/// Standard error of each empirical covariance entry under Isserlis:
/// sqrt((G_jj G_kk + G_jk^2) / M).
Matrix covariance_std_error(const GramMatrix& g, Eigen::Index samples);

/// N(0, G_n) density at x, including the (2 pi)^{-n/2} factor.
/// Throws SingularGramian when lambda_min(G_n) <= 1e-12 * lambda_max(G_n).
double joint_density(const GramMatrix& g, const Vector& x);

/// (1/M) sum_m f_m omega_m. Throws LengthMismatch unless f has M entries.
Vector synthesis_mc(const Vector& f_values, const WhiteNoiseEnsemble& ens);

struct Reconstruction {
  Vector x_hat;  // length D
  double error = 0.0;
};

/// synthesis_mc of f = <x, .>; error = |x_hat - x| with x zero-padded.
Reconstruction reconstruct_mc(const Vector& x, const WhiteNoiseEnsemble& ens);

/// Mean of <y, omega><probe, omega> = <synthesis_mc(<y,.>), probe> against <y, probe>.
McEstimate projection_check(const Vector& y, const Vector& probe, const WhiteNoiseEnsemble& ens);

/// Zero-pads x to length d; throws DimensionExceedsTruncation if x is longer.
Vector pad_to(const Vector& x, Eigen::Index d);

}  // namespace pframes
