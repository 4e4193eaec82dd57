#pragma once

// Markov chain on frame indices with transition probabilities
// p(x, y) = <x, y>^2 / c(x), c(x) = sum_n <x, phi_n>^2.

#include <cstdint>
#include <vector>

#include "pframes/frame.hpp"

namespace pframes {

/// c(x). Throws ZeroVector for x = 0.
double normalizer(const Frame& frame, const Vector& x);

/// <x, y>^2 / c(x). A density-like quantity for arbitrary y; it is a row of a
/// stochastic matrix only when y ranges over the frame itself.
double transition_prob(const Frame& frame, const Vector& x, const Vector& y);

/// Distribution of the first step from an external start x: entry k is
/// transition_prob(frame, x, phi_k). Sums to one.
Vector start_distribution(const Frame& frame, const Vector& x);

class FrameChain {
 public:
  /// Throws ZeroFrameVector if some phi_k = 0, NotAFrame if alpha is zero.
  explicit FrameChain(Frame frame);

  const Frame& frame() const noexcept { return frame_; }
  Eigen::Index size() const noexcept { return frame_.size(); }

  /// c(phi_j) per frame index.
  const Vector& normalizers() const noexcept { return normalizers_; }
  /// P_jk = <phi_j, phi_k>^2 / c(phi_j).
  const Matrix& transition_matrix() const noexcept { return transition_; }

  /// max_j |sum_k P_jk - 1|.
  double row_sum_residual() const;
  /// max_jk |c_j P_jk - c_k P_kj| / max(c_j P_jk, c_k P_kj).
  double reversibility_residual() const;
  /// max_jk (P_jk - |phi_k|^2 / alpha); nonpositive when the bound holds.
  double bound_residual() const;

 private:
  Frame frame_;
  Vector normalizers_;
  Matrix transition_;
};

FrameChain build_chain(const Frame& frame);

/// p(x, phi_{n1}) P_{n1 n2} ... P_{n(k-1) nk}, indices 0-based.
double path_probability(const FrameChain& chain, const Vector& x, const std::vector<Eigen::Index>& indices);

struct PathSample {
  std::vector<Eigen::Index> indices;
  double probability = 0.0;
};

struct PathSet {
  Vector start;
  std::vector<PathSample> paths;
};

/// m independent length-k paths from x. Path i uses only the stream keyed by
/// (seed, i), so the output is identical for any worker count.
PathSet sample_paths(const FrameChain& chain, const Vector& x, int k, int m, std::uint64_t seed);

/// Inverse-CDF draw: smallest index whose cumulative weight exceeds u * total.
/// Equal cumulative values resolve to the lower index; zero-weight entries are never chosen.
Eigen::Index inverse_cdf_pick(const Vector& cumulative, double u);

}  // namespace pframes
