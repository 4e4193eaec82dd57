#pragma once

#include <random>

#include "pframes/dpp.hpp"

namespace fixtures {

/// Q diag(lambda) Q^T with Haar-like Q and lambda uniform on [0, 1]; some
/// eigenvalues are pinned to exactly 0 or 1 to exercise projection parts.
inline pframes::DppKernel random_kernel(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  pframes::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = n01(rng);
  const pframes::Matrix q = Eigen::HouseholderQR<pframes::Matrix>(a).householderQ();
  pframes::Vector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = u01(rng);
    lambda(i) = r < 0.1 ? 0.0 : (r > 0.9 ? 1.0 : u01(rng));
  }
  pframes::Matrix k = q * lambda.asDiagonal() * q.transpose();
  k = (0.5 * (k + k.transpose())).eval();
  return pframes::DppKernel::from_matrix(k);
}

}  // namespace fixtures
