#include "pframes/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pframes/error.hpp"
#include "pframes/markov.hpp"
#include "pframes/parallel.hpp"
#include "pframes/random.hpp"

namespace pframes {
namespace {

constexpr double kSpectrumSlack = 1e-10;

void orthonormalize_columns(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
    const double norm = v.col(j).norm();
    if (norm > 0.0) v.col(j) /= norm;
  }
}

void drop_column(Matrix& v, Eigen::Index j) {
  const Eigen::Index last = v.cols() - 1;
  if (j < last) v.block(0, j, v.rows(), last - j) = v.block(0, j + 1, v.rows(), last - j).eval();
  v.conservativeResize(Eigen::NoChange, last);
}

PointConfiguration draw_one(const DppKernel& kernel, std::uint64_t seed, std::uint64_t index) {
  CounterStream stream(seed, StreamDomain::DppDraw, index);
  const Vector& lambda = kernel.eigenvalues();
  const Eigen::Index n = kernel.size();

  std::vector<Eigen::Index> chosen;
  for (Eigen::Index i = 0; i < n; ++i) {
    double l = lambda(i);
    if (l <= kSpectrumSlack) l = 0.0;
    if (l >= 1.0 - kSpectrumSlack) l = 1.0;
    const double u = stream.uniform();
    if (u < l) chosen.push_back(i);
  }
  Matrix v(n, static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = kernel.eigenvectors().col(chosen[c]);

  std::vector<Eigen::Index> out;
  out.reserve(chosen.size());
  Vector cdf(n);
  while (v.cols() > 0) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += v.row(i).squaredNorm();
      cdf(i) = acc;
    }
    const Eigen::Index item = inverse_cdf_pick(cdf, stream.uniform());
    out.push_back(item);

    // Restrict the span to vectors vanishing at `item`, pivoting on the largest entry.
    Eigen::Index pivot = 0;
    v.row(item).cwiseAbs().maxCoeff(&pivot);
    const Vector pivot_col = v.col(pivot) / v(item, pivot);
    const Eigen::RowVectorXd row = v.row(item);
    v -= pivot_col * row;
    drop_column(v, pivot);
    orthonormalize_columns(v);
  }
  return PointConfiguration(std::move(out));
}

}  // namespace

DppKernel DppKernel::from_matrix(Matrix k) {
  if (k.rows() != k.cols() || k.rows() == 0) throw Error(Errc::InvalidKernel, "kernel must be a nonempty square matrix");
  require_finite(k, "kernel");
  if (asymmetry(k) > 1e-12) throw Error(Errc::InvalidKernel, "kernel is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  if (es.info() != Eigen::Success) throw Error(Errc::SolverFailure, "kernel eigensolver did not converge");
  const Vector& ev = es.eigenvalues();
  if (ev(0) < -kSpectrumSlack || ev(ev.size() - 1) > 1.0 + kSpectrumSlack) {
    throw Error(Errc::InvalidKernel, "kernel spectrum [" + std::to_string(ev(0)) + ", " +
                                         std::to_string(ev(ev.size() - 1)) + "] is not inside [0, 1]");
  }
  return DppKernel(std::move(k), ev, es.eigenvectors());
}

DppKernel kernel_from_frame(const Frame& frame) {
  const GramMatrix g = gram(frame);
  return DppKernel::from_matrix(g.entries() / frame.upper_bound());
}

DppKernel kernel_from_gramian_strict(const GramMatrix& g) { return DppKernel::from_matrix(g.entries()); }

PointConfiguration::PointConfiguration(std::vector<Eigen::Index> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(Errc::InvalidArgument, "point configuration has repeated indices");
  }
  if (!indices_.empty() && indices_.front() < 0) throw Error(Errc::InvalidArgument, "negative index in point configuration");
}

PointConfiguration PointConfiguration::from_mask(std::uint64_t mask) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < 64; ++i) {
    if ((mask >> i) & 1u) idx.push_back(i);
  }
  return PointConfiguration(std::move(idx));
}

std::uint64_t PointConfiguration::mask() const {
  std::uint64_t m = 0;
  for (const auto i : indices_) {
    if (i >= 64) throw Error(Errc::IndexOutOfRange, "index too large for a subset mask");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

double inclusion_probability(const DppKernel& kernel, const PointConfiguration& s) {
  if (s.empty()) return 1.0;
  if (s.indices().back() >= kernel.size()) {
    throw Error(Errc::IndexOutOfRange, "index " + std::to_string(s.indices().back()) + " outside kernel of size " +
                                           std::to_string(kernel.size()));
  }
  const auto k = static_cast<Eigen::Index>(s.size());
  Matrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = kernel.matrix()(s.indices()[a], s.indices()[b]);
  }
  return sub.partialPivLu().determinant();
}

std::vector<double> subset_distribution_bruteforce(const DppKernel& kernel) {
  const Eigen::Index n = kernel.size();
  if (n > kMaxBruteForceSize) {
    throw Error(Errc::TooLarge, "brute-force enumeration is limited to n <= 20, got " + std::to_string(n));
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> table(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    table[mask] = inclusion_probability(kernel, PointConfiguration::from_mask(mask));
  }
  // Superset Moebius transform: P(Phi = S) = sum_{T >= S} (-1)^{|T|-|S|} det(K_T).
  for (Eigen::Index bit = 0; bit < n; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t mask = 0; mask < count; ++mask) {
      if (!(mask & b)) table[mask] -= table[mask | b];
    }
  }
  for (std::size_t mask = 0; mask < count; ++mask) {
    if (table[mask] < -kSpectrumSlack) {
      throw Error(Errc::InvalidKernel, "negative subset probability " + std::to_string(table[mask]));
    }
    table[mask] = std::max(0.0, table[mask]);
  }
  return table;
}

std::vector<PointConfiguration> dpp_sample(const DppKernel& kernel, int m, std::uint64_t seed) {
  if (m < 1) throw Error(Errc::InvalidArgument, "sample count must be at least 1");
  const auto total = static_cast<std::size_t>(m);
  std::vector<PointConfiguration> out(total);
  parallel_for_blocks(block_count(total), [&](std::size_t b) {
    const std::size_t hi = std::min(total, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < hi; ++i) out[i] = draw_one(kernel, seed, i);
  });
  return out;
}

std::vector<double> empirical_subset_distribution(const std::vector<PointConfiguration>& draws, Eigen::Index n) {
  if (n > kMaxBruteForceSize) throw Error(Errc::TooLarge, "subset table limited to n <= 20");
  std::vector<double> freq(std::size_t{1} << n, 0.0);
  for (const auto& d : draws) freq[d.mask()] += 1.0;
  for (auto& f : freq) f /= static_cast<double>(draws.size());
  return freq;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error(Errc::LengthMismatch, "distributions have different support sizes");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

}  // namespace pframes
