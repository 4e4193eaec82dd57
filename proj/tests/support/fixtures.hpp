#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pframes/frame.hpp"

namespace fixtures {

using pframes::Frame;
using pframes::Matrix;
using pframes::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vector to_eigen(const oracle::Vec& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

inline oracle::Vec to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

inline oracle::Mat to_std(const Matrix& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), oracle::Vec(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

inline Vector e(Eigen::Index i, Eigen::Index n) { return Vector::Unit(n, i); }

/// Orthonormal basis of R^2.
inline Frame onb2() {
  const std::vector<Vector> v{e(0, 2), e(1, 2)};
  return Frame::build(v);
}

/// The three unit vectors at 120 degree spacing.
inline std::vector<Vector> mercedes_benz_vectors() {
  const double h = std::sqrt(3.0) / 2.0;
  return {vec({1.0, 0.0}), vec({-0.5, h}), vec({-0.5, -h})};
}

inline Frame mercedes_benz() { return Frame::build(mercedes_benz_vectors()); }

/// n_frame standard-normal vectors in R^dim; n_frame >= dim spans almost surely.
inline Frame random_frame(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::vector<Vector> vs;
  for (const auto& v : oracle::random_vectors(rng, count, dim)) vs.push_back(to_eigen(v));
  return Frame::build(vs);
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim) {
  return to_eigen(oracle::random_vectors(rng, 1, dim).front());
}

inline Vector random_unit(std::mt19937_64& rng, std::size_t dim) { return random_vector(rng, dim).normalized(); }

}  // namespace fixtures
