#include "pframes/translation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pframes/error.hpp"
#include "pframes/stats.hpp"

namespace pframes {
namespace {

const double kMaxExponent = std::log(std::numeric_limits<double>::max());
const double kMinExponent = std::log(std::numeric_limits<double>::min());

double checked_exp(double e) {
  // Underflow would break strict positivity, so it is reported the same way.
  if (!(e < kMaxExponent && e > kMinExponent))
    throw Error(Errc::Overflow, "exponent " + std::to_string(e) + " is outside the double range");
  return std::exp(e);
}

McEstimate estimate_from(const SampleMoments& acc, double target) {
  return make_estimate(acc.average(), acc.std_error(), static_cast<std::int64_t>(acc.count), target);
}

}  // namespace

double rn_density(const Vector& x, const Eigen::Ref<const Vector>& omega) {
  return checked_exp(pairing(x, omega) - 0.5 * x.squaredNorm());
}

ExpFunctional::ExpFunctional(Vector x, const WhiteNoiseEnsemble& ens) : x_(std::move(x)) {
  values_ = pair_all(x_, ens);
  const double half = 0.5 * x_.squaredNorm();
  for (Eigen::Index m = 0; m < values_.size(); ++m) values_(m) = checked_exp(values_(m) - half);
}

double CocycleCheck::relative_residual() const noexcept {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

CocycleCheck cocycle_check(const Vector& x1, const Vector& x2, const Eigen::Ref<const Vector>& omega) {
  const Eigen::Index n = std::max(x1.size(), x2.size());
  const Vector a = pad_to(x1, n);
  const Vector b = pad_to(x2, n);
  CocycleCheck c;
  c.lhs = rn_density(x1, omega) * rn_density(x2, omega);
  c.rhs = checked_exp(a.dot(b)) * rn_density(a + b, omega);
  return c;
}

McEstimate rn_density_mean_check(const Vector& x, const WhiteNoiseEnsemble& ens) {
  const ExpFunctional e(x, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(e.values().size()),
                                   [&](std::size_t m) { return e.values()(static_cast<Eigen::Index>(m)); });
  return estimate_from(acc, 1.0);
}

McEstimate translated_second_moment(const Vector& x, const Vector& y, const WhiteNoiseEnsemble& ens) {
  const ExpFunctional e(x, ens);
  const Vector ty = pair_all(y, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(ty.size()), [&](std::size_t m) {
    const auto i = static_cast<Eigen::Index>(m);
    return e.values()(i) * ty(i) * ty(i);
  });
  const Eigen::Index n = std::max(x.size(), y.size());
  const double xy = pad_to(x, n).dot(pad_to(y, n));
  return estimate_from(acc, xy * xy + y.squaredNorm());
}

ChangeOfVariables change_of_variables_check(const Vector& x, const Vector& y, int power,
                                            const WhiteNoiseEnsemble& ens) {
  if (power != 1 && power != 2) throw Error(Errc::InvalidArgument, "observable power must be 1 or 2");
  const ExpFunctional e(x, ens);
  const Vector ty = pair_all(y, ens);
  const Eigen::Index n = std::max(x.size(), y.size());
  const double shift = pad_to(x, n).dot(pad_to(y, n));  // <y, omega + x> = <y, omega> + <y, x>
  const auto g = [power](double t) { return power == 1 ? t : t * t; };
  const auto count = static_cast<std::size_t>(ty.size());
  const auto w = blocked_moments(count, [&](std::size_t m) {
    const auto i = static_cast<Eigen::Index>(m);
    return e.values()(i) * g(ty(i));
  });
  const auto s = blocked_moments(count, [&](std::size_t m) { return g(ty(static_cast<Eigen::Index>(m)) + shift); });
  // Both sides estimate the same closed form; record it as the target.
  const double target = power == 1 ? shift : shift * shift + y.squaredNorm();
  ChangeOfVariables out{estimate_from(w, target), estimate_from(s, target), 0.0};
  const double se = std::hypot(out.weighted.std_error, out.shifted.std_error);
  out.z_score = make_estimate(out.weighted.value, se, out.weighted.sample_count, out.shifted.value).z_score;
  return out;
}

Frame parseval_rescale(const Frame& frame) {
  if (!frame.is_tight()) throw Error(Errc::NotTight, "only tight frames rescale to Parseval frames");
  return Frame::from_columns(frame.vectors() / std::sqrt(frame.upper_bound()));
}

Vector kl_expand(const Frame& frame, const Vector& x, const WhiteNoiseEnsemble& ens) {
  if (!frame.is_parseval()) {
    throw Error(Errc::NotParseval, "frame bounds (" + std::to_string(frame.lower_bound()) + ", " +
                                       std::to_string(frame.upper_bound()) + ") are not both 1");
  }
  if (frame.size() > ens.dim()) {
    throw Error(Errc::DimensionExceedsTruncation, "frame has " + std::to_string(frame.size()) +
                                                      " vectors but only " + std::to_string(ens.dim()) +
                                                      " white-noise coordinates");
  }
  // Z_n := omega_n realises the i.i.d. N(0,1) system.
  return pair_all(analysis(frame, x), ens);
}

McEstimate kl_variance_check(const Frame& frame, const Vector& x, const WhiteNoiseEnsemble& ens) {
  const Vector t = kl_expand(frame, x, ens);
  const auto acc = blocked_moments(static_cast<std::size_t>(t.size()), [&](std::size_t m) {
    const double v = t(static_cast<Eigen::Index>(m));
    return v * v;
  });
  return estimate_from(acc, analysis(frame, x).squaredNorm());
}

}  // namespace pframes
