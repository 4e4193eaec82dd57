#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace pframes {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Count, compensated sum and centred second moment of a sample. Partial
/// results merge exactly in a fixed order, so blocked reductions are
/// reproducible for any thread count.
struct SampleMoments {
  std::size_t count = 0;
  CompensatedSum sum;
  double mean = 0.0;  // running Welford mean, used only for m2
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    sum.add(x);
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const SampleMoments& other) noexcept;

  double average() const noexcept { return count ? sum.value() / static_cast<double>(count) : 0.0; }
  double variance() const noexcept { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const noexcept {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Upper tail P(X >= statistic) of a chi-square variable with dof degrees of freedom.
double chi_square_pvalue(double statistic, int dof);

struct ChiSquareTest {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of `counts` against `probabilities` (n = sum of counts).
/// Cells with zero expected count must have zero observed count, else p = 0.
/// Degrees of freedom = number of positive-probability cells - 1.
ChiSquareTest chi_square_goodness_of_fit(std::span<const double> counts, std::span<const double> probabilities);

/// Moments of f(0), ..., f(n-1), evaluated block-parallel and merged in block order.
template <class F>
SampleMoments blocked_moments(std::size_t n, F&& f);

}  // namespace pframes

#include "pframes/parallel.hpp"

namespace pframes {

inline void SampleMoments::merge(const SampleMoments& other) noexcept {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double delta = other.mean - mean;
  const double n = na + nb;
  m2 += other.m2 + delta * delta * na * nb / n;
  mean += delta * nb / n;
  count += other.count;
  sum.add(other.sum.value());
}

template <class F>
SampleMoments blocked_moments(std::size_t n, F&& f) {
  const std::size_t blocks = block_count(n);
  std::vector<SampleMoments> partial(blocks);
  parallel_for_blocks(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    SampleMoments acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
    partial[b] = acc;
  });
  SampleMoments total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace pframes
