#pragma once

// Determinantal point processes on {0, ..., n-1} with a symmetric correlation
// kernel K, 0 <= K <= I: P(Phi contains S) = det(K_S).

#include <cstdint>
#include <vector>

#include "pframes/frame.hpp"

namespace pframes {

class DppKernel {
 public:
  /// Accepts K only if it is symmetric within 1e-12 and its spectrum lies in
  /// [-1e-10, 1 + 1e-10]; throws InvalidKernel otherwise. No rescaling.
  static DppKernel from_matrix(Matrix k);

  const Matrix& matrix() const noexcept { return k_; }
  Eigen::Index size() const noexcept { return k_.rows(); }
  /// Ascending spectrum and matching orthonormal eigenvectors (columns).
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  DppKernel(Matrix k, Vector values, Matrix vectors)
      : k_(std::move(k)), eigenvalues_(std::move(values)), eigenvectors_(std::move(vectors)) {}

  Matrix k_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// K = G / beta, spectrum in [0, 1] because G <= beta I.
DppKernel kernel_from_frame(const Frame& frame);

/// Uses a Gramian as-is; throws InvalidKernel unless its spectrum already lies in [0, 1].
DppKernel kernel_from_gramian_strict(const GramMatrix& g);

/// A finite subset of {0, ..., n-1}, stored sorted.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  /// Sorts; throws InvalidArgument on duplicates or negative indices.
  explicit PointConfiguration(std::vector<Eigen::Index> indices);

  static PointConfiguration from_mask(std::uint64_t mask);

  const std::vector<Eigen::Index>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  /// Bit i set iff i is in the set; requires every index < 64.
  std::uint64_t mask() const;

  friend bool operator==(const PointConfiguration&, const PointConfiguration&) = default;

 private:
  std::vector<Eigen::Index> indices_;
};

/// det(K_S); 1 for the empty set. Throws IndexOutOfRange.
double inclusion_probability(const DppKernel& kernel, const PointConfiguration& s);

inline constexpr Eigen::Index kMaxBruteForceSize = 20;

/// P(Phi = S) for every subset S, indexed by bit mask, by Moebius inversion
/// of the inclusion probabilities. Throws TooLarge for n > 20.
std::vector<double> subset_distribution_bruteforce(const DppKernel& kernel);

/// m exact draws by the spectral method. Draw i depends only on (seed, i).
std::vector<PointConfiguration> dpp_sample(const DppKernel& kernel, int m, std::uint64_t seed);

/// Relative frequency of each subset mask among the draws (n <= 20).
std::vector<double> empirical_subset_distribution(const std::vector<PointConfiguration>& draws, Eigen::Index n);

/// (1/2) sum |p - q|.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace pframes
