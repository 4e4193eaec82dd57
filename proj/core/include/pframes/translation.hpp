#pragma once

// Translated Gaussian measures: the Radon-Nikodym density of mu^x against mu,
// the exponential functional and its cocycle, and the Karhunen-Loeve
// expansion of <x, .> along a Parseval frame.

#include "pframes/gaussian.hpp"

namespace pframes {

/// exp(<x, omega> - |x|^2 / 2). Throws Overflow if the exponent is not representable.
double rn_density(const Vector& x, const Eigen::Ref<const Vector>& omega);

/// The exponential functional E(x) evaluated on every sample of an ensemble.
class ExpFunctional {
 public:
  ExpFunctional(Vector x, const WhiteNoiseEnsemble& ens);

  const Vector& x() const noexcept { return x_; }
  const Vector& values() const noexcept { return values_; }

 private:
  Vector x_;
  Vector values_;
};

struct CocycleCheck {
  double lhs = 0.0;  // E(x1)(omega) E(x2)(omega)
  double rhs = 0.0;  // exp(<x1, x2>) E(x1 + x2)(omega)

  double relative_residual() const noexcept;
};

/// Pointwise multiplicative identity between exponential functionals.
CocycleCheck cocycle_check(const Vector& x1, const Vector& x2, const Eigen::Ref<const Vector>& omega);

/// Ensemble mean of the density against 1.
McEstimate rn_density_mean_check(const Vector& x, const WhiteNoiseEnsemble& ens);

/// Mean of E(x)(omega) <y, omega>^2 against <x, y>^2 + |y|^2.
McEstimate translated_second_moment(const Vector& x, const Vector& y, const WhiteNoiseEnsemble& ens);

/// Observable used by the change-of-variables check: g(omega) = <y, omega>^power.
struct ChangeOfVariables {
  McEstimate weighted;  // mean of E(x)(omega) g(omega)
  McEstimate shifted;   // mean of g(omega + x)
  /// (weighted - shifted) / sqrt(se_w^2 + se_s^2).
  double z_score = 0.0;
};

/// Compares int E(x) g dmu with int g(. + x) dmu for g = <y, .>^power, power in {1, 2}.
ChangeOfVariables change_of_variables_check(const Vector& x, const Vector& y, int power,
                                            const WhiteNoiseEnsemble& ens);

/// Divides a tight frame by sqrt(beta). Throws NotTight otherwise.
Frame parseval_rescale(const Frame& frame);

/// Per-sample sum_n <x, phi_n> omega_n for a Parseval frame.
/// Throws NotParseval if |alpha - 1| or |beta - 1| > 1e-10, and
/// DimensionExceedsTruncation if n_frame > D.
Vector kl_expand(const Frame& frame, const Vector& x, const WhiteNoiseEnsemble& ens);

/// Second moment of kl_expand against sum_n <x, phi_n>^2.
McEstimate kl_variance_check(const Frame& frame, const Vector& x, const WhiteNoiseEnsemble& ens);

}  // namespace pframes
