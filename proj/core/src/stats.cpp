#include "pframes/stats.hpp"

#include <gsl/gsl_cdf.h>

#include "pframes/error.hpp"

namespace pframes {

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) return 1.0;
  return gsl_cdf_chisq_Q(statistic, static_cast<double>(dof));
}

ChiSquareTest chi_square_goodness_of_fit(std::span<const double> counts, std::span<const double> probabilities) {
  if (counts.size() != probabilities.size()) throw Error(Errc::LengthMismatch, "counts and probabilities differ in length");
  double n = 0.0;
  for (const double c : counts) n += c;
  ChiSquareTest t;
  int cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = n * probabilities[i];
    if (probabilities[i] <= 0.0) {
      if (counts[i] > 0.0) {
        t.statistic = std::numeric_limits<double>::infinity();
        t.p_value = 0.0;
      }
      continue;
    }
    ++cells;
    const double d = counts[i] - expected;
    t.statistic += d * d / expected;
  }
  t.dof = std::max(0, cells - 1);
  if (t.p_value != 0.0) t.p_value = chi_square_pvalue(t.statistic, t.dof);
  return t;
}

}  // namespace pframes
