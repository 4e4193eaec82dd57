#include "pframes/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pframes/error.hpp"
#include "pframes/parallel.hpp"
#include "pframes/random.hpp"
#include "pframes/stats.hpp"

namespace pframes {

WhiteNoiseEnsemble::WhiteNoiseEnsemble(Eigen::Index dim, Eigen::Index samples, std::uint64_t seed) : seed_(seed) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "truncation dimension must be positive");
  if (samples < 2) throw Error(Errc::InvalidArgument, "ensemble needs at least two samples");
  samples_.resize(dim, samples);
  const auto total = static_cast<std::size_t>(samples);
  const auto pairs = static_cast<std::uint32_t>((dim + 1) / 2);
  parallel_for_blocks(block_count(total), [&](std::size_t b) {
    const std::size_t hi = std::min(total, (b + 1) * kBlockSize);
    for (std::size_t m = b * kBlockSize; m < hi; ++m) {
      double* col = samples_.col(static_cast<Eigen::Index>(m)).data();
      for (std::uint32_t p = 0; p < pairs; ++p) {
        const auto z = white_noise_pair(seed_, m, p);
        col[2 * p] = z[0];
        if (2 * p + 1 < static_cast<std::uint32_t>(dim)) col[2 * p + 1] = z[1];
      }
    }
  });
}

bool WhiteNoiseEnsemble::within_sanity_band() const {
  const auto m = static_cast<double>(sample_count());
  for (Eigen::Index d = 0; d < dim(); ++d) {
    SampleMoments acc;
    for (Eigen::Index s = 0; s < sample_count(); ++s) acc.add(samples_(d, s));
    if (std::abs(acc.average()) > 5.0 / std::sqrt(m)) return false;
    if (std::abs(acc.variance() - 1.0) > 5.0 * std::sqrt(2.0 / m)) return false;
  }
  return true;
}

bool McEstimate::within(double z_max) const noexcept { return std::abs(z_score) <= z_max; }

McEstimate make_estimate(double value, double std_error, std::int64_t count, double target) {
  McEstimate e{value, target, std_error, count, 0.0};
  const double diff = value - target;
  if (std_error > 0.0) {
    e.z_score = diff / std_error;
  } else if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(target))) {
    e.z_score = 0.0;
  } else {
    e.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return e;
}

double ComplexMcEstimate::max_abs_z() const noexcept {
  return std::max(std::abs(real.z_score), std::abs(imag.z_score));
}

namespace {

McEstimate estimate_from(const SampleMoments& acc, double target) {
  return make_estimate(acc.average(), acc.std_error(), static_cast<std::int64_t>(acc.count), target);
}

}  // namespace

Vector pad_to(const Vector& x, Eigen::Index d) {
  if (x.size() > d) {
    throw Error(Errc::DimensionExceedsTruncation, "vector of length " + std::to_string(x.size()) +
                                                      " exceeds truncation dimension " + std::to_string(d));
  }
  Vector out = Vector::Zero(d);
  out.head(x.size()) = x;
  return out;
}

double pairing(const Vector& x, const Eigen::Ref<const Vector>& omega) {
  if (x.size() > omega.size()) {
    throw Error(Errc::DimensionExceedsTruncation, "vector of length " + std::to_string(x.size()) +
                                                      " exceeds truncation dimension " + std::to_string(omega.size()));
  }
  return x.dot(omega.head(x.size()));
}

Vector pair_all(const Vector& x, const WhiteNoiseEnsemble& ens) {
  if (x.size() > ens.dim()) {
    throw Error(Errc::DimensionExceedsTruncation, "vector of length " + std::to_string(x.size()) +
                                                      " exceeds truncation dimension " + std::to_string(ens.dim()));
  }
  return ens.samples().topRows(x.size()).transpose() * x;
}

McEstimate ito_isometry_check(const Vector& x, const WhiteNoiseEnsemble& ens) {
  const Vector t = pair_all(x, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(t.size()), [&](std::size_t m) {
    const double v = t(static_cast<Eigen::Index>(m));
    return v * v;
  });
  return estimate_from(acc, x.squaredNorm());
}

ComplexMcEstimate char_functional_check(const Vector& x, const WhiteNoiseEnsemble& ens) {
  const Vector t = pair_all(x, ens);
  const auto n = static_cast<std::size_t>(t.size());
  const auto re = blocked_moments(n, [&](std::size_t m) { return std::cos(t(static_cast<Eigen::Index>(m))); });
  const auto im = blocked_moments(n, [&](std::size_t m) { return std::sin(t(static_cast<Eigen::Index>(m))); });
  return {estimate_from(re, std::exp(-0.5 * x.squaredNorm())), estimate_from(im, 0.0)};
}

double double_factorial_odd(int k) {
  double r = 1.0;
  for (int j = 1; j <= 2 * k - 1; j += 2) r *= j;
  return r;
}

McEstimate moment_check(const Vector& x, int k, MomentParity parity, const WhiteNoiseEnsemble& ens) {
  if (k < 1) throw Error(Errc::InvalidArgument, "moment index k must be at least 1");
  if (k > kMaxMomentK) throw Error(Errc::KTooLarge, "moment index k = " + std::to_string(k) + " exceeds 4");
  const int order = parity == MomentParity::Even ? 2 * k : 2 * k + 1;
  const Vector t = pair_all(x, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(t.size()), [&](std::size_t m) {
    const double v = t(static_cast<Eigen::Index>(m));
    double p = 1.0;
    for (int j = 0; j < order; ++j) p *= v;
    return p;
  });
  const double target =
      parity == MomentParity::Even ? double_factorial_odd(k) * std::pow(x.squaredNorm(), k) : 0.0;
  return estimate_from(acc, target);
}

Matrix gaussian_process_from_frame(const Frame& frame, const WhiteNoiseEnsemble& ens) {
  if (frame.dim() > ens.dim()) {
    throw Error(Errc::DimensionExceedsTruncation, "frame dimension " + std::to_string(frame.dim()) +
                                                      " exceeds truncation dimension " + std::to_string(ens.dim()));
  }
  return ens.samples().topRows(frame.dim()).transpose() * frame.vectors();
}

Matrix empirical_covariance(const Matrix& process) {
  return (process.transpose() * process) / static_cast<double>(process.rows());
}

Matrix covariance_std_error(const GramMatrix& g, Eigen::Index samples) {
  const Matrix& e = g.entries();
  const Vector d = e.diagonal();
  return ((d * d.transpose() + e.cwiseAbs2()) / static_cast<double>(samples)).cwiseSqrt();
}

double joint_density(const GramMatrix& g, const Vector& x) {
  require_dim(x.size(), g.size(), "density argument");
  const Vector& ev = g.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (!(ev(0) > kTolRankRel * top) || !(top > 0.0)) {
    throw Error(Errc::SingularGramian, "Gramian is singular (smallest eigenvalue " + std::to_string(ev(0)) +
                                           "); pass an invertible sub-Gramian");
  }
  const Eigen::LLT<Matrix> llt(g.entries());
  if (llt.info() != Eigen::Success) throw Error(Errc::SingularGramian, "Cholesky factorisation failed");
  const Matrix l = llt.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double quad = llt.matrixL().solve(x).squaredNorm();
  const double n = static_cast<double>(x.size());
  return std::exp(-0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * quad);
}

Vector synthesis_mc(const Vector& f_values, const WhiteNoiseEnsemble& ens) {
  if (f_values.size() != ens.sample_count()) {
    throw Error(Errc::LengthMismatch, "need one function value per sample (" + std::to_string(ens.sample_count()) +
                                          "), got " + std::to_string(f_values.size()));
  }
  const auto total = static_cast<std::size_t>(ens.sample_count());
  const auto d = static_cast<std::size_t>(ens.dim());
  const std::size_t blocks = block_count(total);
  std::vector<std::vector<CompensatedSum>> partial(blocks, std::vector<CompensatedSum>(d));
  parallel_for_blocks(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    const std::size_t hi = std::min(total, (b + 1) * kBlockSize);
    for (std::size_t m = b * kBlockSize; m < hi; ++m) {
      const double f = f_values(static_cast<Eigen::Index>(m));
      const double* col = ens.samples().col(static_cast<Eigen::Index>(m)).data();
      for (std::size_t j = 0; j < d; ++j) acc[j].add(f * col[j]);
    }
  });
  Vector out(ens.dim());
  for (std::size_t j = 0; j < d; ++j) {
    CompensatedSum s;
    for (const auto& p : partial) s.add(p[j].value());
    out(static_cast<Eigen::Index>(j)) = s.value() / static_cast<double>(total);
  }
  return out;
}

Reconstruction reconstruct_mc(const Vector& x, const WhiteNoiseEnsemble& ens) {
  const Vector padded = pad_to(x, ens.dim());
  Reconstruction r;
  r.x_hat = synthesis_mc(pair_all(x, ens), ens);
  r.error = (r.x_hat - padded).norm();
  return r;
}

McEstimate projection_check(const Vector& y, const Vector& probe, const WhiteNoiseEnsemble& ens) {
  const Vector ty = pair_all(y, ens);
  const Vector tp = pair_all(probe, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(ty.size()), [&](std::size_t m) {
    const auto i = static_cast<Eigen::Index>(m);
    return ty(i) * tp(i);
  });
  const Eigen::Index n = std::max(y.size(), probe.size());
  return estimate_from(acc, pad_to(y, n).dot(pad_to(probe, n)));
}

}  // namespace pframes
