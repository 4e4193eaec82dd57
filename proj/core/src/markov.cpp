#include "pframes/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pframes/error.hpp"
#include "pframes/parallel.hpp"
#include "pframes/random.hpp"

namespace pframes {
namespace {

void require_nonzero(const Vector& x) {
  if (x.squaredNorm() == 0.0) throw Error(Errc::ZeroVector, "transition start vector is zero");
}

Vector cumulative(const Eigen::Ref<const Vector>& p) {
  Vector c(p.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p(i);
    c(i) = acc;
  }
  return c;
}

}  // namespace

double normalizer(const Frame& frame, const Vector& x) {
  require_dim(x.size(), frame.dim(), "normalizer input");
  require_finite(x, "normalizer input");
  require_nonzero(x);
  return analysis(frame, x).squaredNorm();
}

double transition_prob(const Frame& frame, const Vector& x, const Vector& y) {
  const double c = normalizer(frame, x);
  require_dim(y.size(), frame.dim(), "transition target");
  const double ip = x.dot(y);
  return ip * ip / c;
}

Vector start_distribution(const Frame& frame, const Vector& x) {
  const double c = normalizer(frame, x);
  return analysis(frame, x).cwiseAbs2() / c;
}

FrameChain::FrameChain(Frame frame) : frame_(std::move(frame)) {
  const Matrix& phi = frame_.vectors();
  for (Eigen::Index k = 0; k < phi.cols(); ++k) {
    if (phi.col(k).squaredNorm() == 0.0) {
      throw Error(Errc::ZeroFrameVector, "frame vector " + std::to_string(k) + " is zero");
    }
  }
  if (!frame_.is_frame()) throw Error(Errc::NotAFrame, "frame-induced chain needs a spanning family");
  const Matrix g2 = (phi.transpose() * phi).cwiseAbs2();
  normalizers_ = g2.rowwise().sum();
  transition_ = normalizers_.cwiseInverse().asDiagonal() * g2;
}

double FrameChain::row_sum_residual() const {
  return (transition_.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

double FrameChain::reversibility_residual() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < size(); ++j) {
    for (Eigen::Index k = 0; k < size(); ++k) {
      const double a = normalizers_(j) * transition_(j, k);
      const double b = normalizers_(k) * transition_(k, j);
      const double scale = std::max(a, b);
      if (scale > 0.0) worst = std::max(worst, std::abs(a - b) / scale);
    }
  }
  return worst;
}

double FrameChain::bound_residual() const {
  const Vector norms = frame_.vectors().colwise().squaredNorm().transpose();
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < size(); ++j) {
    for (Eigen::Index k = 0; k < size(); ++k) {
      worst = std::max(worst, transition_(j, k) - norms(k) / frame_.lower_bound());
    }
  }
  return worst;
}

FrameChain build_chain(const Frame& frame) { return FrameChain(frame); }

double path_probability(const FrameChain& chain, const Vector& x, const std::vector<Eigen::Index>& indices) {
  if (indices.empty()) throw Error(Errc::InvalidArgument, "path needs at least one step");
  for (const auto i : indices) {
    if (i < 0 || i >= chain.size()) {
      throw Error(Errc::IndexOutOfRange, "frame index " + std::to_string(i) + " out of range");
    }
  }
  double p = transition_prob(chain.frame(), x, chain.frame().vector(indices.front()));
  for (std::size_t s = 1; s < indices.size(); ++s) p *= chain.transition_matrix()(indices[s - 1], indices[s]);
  return p;
}

Eigen::Index inverse_cdf_pick(const Vector& cumulative, double u) {
  const Eigen::Index n = cumulative.size();
  const double target = u * cumulative(n - 1);
  const double* first = cumulative.data();
  const double* it = std::upper_bound(first, first + n, target);
  if (it == first + n) {
    // u * total rounded up to the total: take the last index with positive weight.
    Eigen::Index i = n - 1;
    while (i > 0 && cumulative(i - 1) == cumulative(i)) --i;
    return i;
  }
  return static_cast<Eigen::Index>(it - first);
}

PathSet sample_paths(const FrameChain& chain, const Vector& x, int k, int m, std::uint64_t seed) {
  if (k < 1) throw Error(Errc::InvalidArgument, "horizon k must be at least 1");
  if (m < 1) throw Error(Errc::InvalidArgument, "path count m must be at least 1");
  const Vector start_cdf = cumulative(start_distribution(chain.frame(), x));
  std::vector<Vector> row_cdf;
  row_cdf.reserve(static_cast<std::size_t>(chain.size()));
  for (Eigen::Index j = 0; j < chain.size(); ++j) row_cdf.push_back(cumulative(chain.transition_matrix().row(j).transpose()));

  PathSet out;
  out.start = x;
  out.paths.resize(static_cast<std::size_t>(m));
  const auto total = static_cast<std::size_t>(m);
  parallel_for_blocks(block_count(total), [&](std::size_t b) {
    const std::size_t hi = std::min(total, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < hi; ++i) {
      CounterStream stream(seed, StreamDomain::MarkovPath, i);
      PathSample& path = out.paths[i];
      path.indices.resize(static_cast<std::size_t>(k));
      path.indices[0] = inverse_cdf_pick(start_cdf, stream.uniform());
      for (int s = 1; s < k; ++s) {
        path.indices[static_cast<std::size_t>(s)] =
            inverse_cdf_pick(row_cdf[static_cast<std::size_t>(path.indices[static_cast<std::size_t>(s - 1)])], stream.uniform());
      }
      path.probability = path_probability(chain, x, path.indices);
    }
  });
  return out;
}

}  // namespace pframes
