#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "pframes/error.hpp"
#include "pframes/markov.hpp"
#include "pframes/stats.hpp"

using namespace pframes;
using namespace fixtures;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pframes::Error";
  return Errc::IoError;
}

}  // namespace

TEST(Normalizer, Examples) {
  EXPECT_DOUBLE_EQ(normalizer(onb2(), e(0, 2)), 1.0);
  EXPECT_NEAR(normalizer(mercedes_benz(), vec({1, 0})), 1.0 + 0.25 + 0.25, 1e-15);
  const Vector x = vec({0.3, -1.7});
  EXPECT_NEAR(normalizer(mercedes_benz(), 2.5 * x), 6.25 * normalizer(mercedes_benz(), x), 1e-13);
  EXPECT_EQ(code_of([] { normalizer(onb2(), Vector::Zero(2)); }), Errc::ZeroVector);
  EXPECT_EQ(code_of([] { normalizer(onb2(), Vector::Zero(3)); }), Errc::DimensionMismatch);
}

TEST(TransitionProb, Examples) {
  EXPECT_DOUBLE_EQ(transition_prob(onb2(), e(0, 2), e(0, 2)), 1.0);
  const Frame mb = mercedes_benz();
  EXPECT_NEAR(transition_prob(mb, mb.vector(0), mb.vector(1)), 0.25 / 1.5, 1e-15);
  EXPECT_EQ(transition_prob(onb2(), e(0, 2), e(1, 2)), 0.0);
  EXPECT_EQ(code_of([] { transition_prob(onb2(), Vector::Zero(2), e(0, 2)); }), Errc::ZeroVector);
}

TEST(BuildChain, Examples) {
  EXPECT_TRUE(build_chain(onb2()).transition_matrix().isApprox(Matrix::Identity(2, 2), 0.0));
  const FrameChain mb = build_chain(mercedes_benz());
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(mb.transition_matrix()(j, k), j == k ? 2.0 / 3.0 : 1.0 / 6.0, 1e-15);
  }
  const std::vector<Vector> with_zero{e(0, 2), e(1, 2), Vector::Zero(2)};
  EXPECT_EQ(code_of([&] { build_chain(Frame::build(with_zero)); }), Errc::ZeroFrameVector);
  const std::vector<Vector> deficient{e(0, 2), 2.0 * e(0, 2)};
  EXPECT_EQ(code_of([&] { build_chain(Frame::build(deficient)); }), Errc::NotAFrame);
}

TEST(PathProbability, Examples) {
  EXPECT_DOUBLE_EQ(path_probability(build_chain(onb2()), e(0, 2), {0, 0, 0}), 1.0);
  const FrameChain mb = build_chain(mercedes_benz());
  EXPECT_NEAR(path_probability(mb, mb.frame().vector(0), {0, 1}), (2.0 / 3.0) * (1.0 / 6.0), 1e-15);
  EXPECT_EQ(path_probability(build_chain(onb2()), e(0, 2), {0, 1}), 0.0);
  EXPECT_EQ(code_of([&] { path_probability(mb, e(0, 2), {0, 3}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { path_probability(mb, Vector::Zero(2), {0}); }), Errc::ZeroVector);
  EXPECT_EQ(code_of([&] { path_probability(mb, e(0, 2), {}); }), Errc::InvalidArgument);
}

TEST(InverseCdfPick, TiesResolveLowAndZeroMassIsSkipped) {
  const Vector cdf = vec({0.25, 0.25, 0.75, 1.0});
  EXPECT_EQ(inverse_cdf_pick(cdf, 0.0), 0);
  EXPECT_EQ(inverse_cdf_pick(cdf, 0.2499), 0);
  EXPECT_EQ(inverse_cdf_pick(cdf, 0.25), 2);  // index 1 has zero mass
  EXPECT_EQ(inverse_cdf_pick(cdf, 0.9999), 3);
  EXPECT_EQ(inverse_cdf_pick(vec({0.5, 1.0, 1.0}), 1.0), 1);
}

TEST(SamplePaths, OrthonormalBasisIsDeterministic) {
  const auto set = sample_paths(build_chain(onb2()), e(0, 2), 5, 1000, 3);
  for (const auto& p : set.paths) {
    EXPECT_EQ(p.indices, (std::vector<Eigen::Index>{0, 0, 0, 0, 0}));
    EXPECT_EQ(p.probability, 1.0);
  }
}

TEST(SamplePaths, RejectsBadArguments) {
  const FrameChain chain = build_chain(onb2());
  EXPECT_EQ(code_of([&] { sample_paths(chain, e(0, 2), 2, 0, 1); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { sample_paths(chain, e(0, 2), 0, 5, 1); }), Errc::InvalidArgument);
}

TEST(SamplePaths, FirstStepFrequencyWithinBinomialBand) {
  const FrameChain mb = build_chain(mercedes_benz());
  const int m = 100000;
  const auto set = sample_paths(mb, mb.frame().vector(0), 1, m, 17);
  double hits = 0;
  for (const auto& p : set.paths) hits += p.indices[0] == 0 ? 1 : 0;
  const double p = 2.0 / 3.0;
  EXPECT_NEAR(hits / m, p, 3.0 * std::sqrt(p * (1 - p) / m));
}

TEST(SamplePaths, LengthTwoPathsPassChiSquare) {
  const FrameChain mb = build_chain(mercedes_benz());
  const Vector x = vec({0.8, 0.3});
  const int m = 200000;
  const auto set = sample_paths(mb, x, 2, m, 99);
  std::vector<double> counts(9, 0.0), probs(9, 0.0);
  for (const auto& p : set.paths) counts[static_cast<std::size_t>(3 * p.indices[0] + p.indices[1])] += 1.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) probs[static_cast<std::size_t>(3 * a + b)] = path_probability(mb, x, {a, b});
  const auto t = chi_square_goodness_of_fit(counts, probs);
  EXPECT_EQ(t.dof, 8);
  const boost::math::chi_squared ref(8);
  EXPECT_NEAR(t.p_value, boost::math::cdf(boost::math::complement(ref, t.statistic)), 1e-10);
  EXPECT_GE(t.p_value, 0.001);
}

TEST(SamplePaths, ReproducibleAcrossWorkerCounts) {
  const FrameChain mb = build_chain(mercedes_benz());
  setenv("FRAMES_THREADS", "1", 1);
  const auto a = sample_paths(mb, e(1, 2), 4, 30000, 5);
  setenv("FRAMES_THREADS", "8", 1);
  const auto b = sample_paths(mb, e(1, 2), 4, 30000, 5);
  unsetenv("FRAMES_THREADS");
  for (std::size_t i = 0; i < a.paths.size(); ++i) {
    ASSERT_EQ(a.paths[i].indices, b.paths[i].indices);
    ASSERT_EQ(a.paths[i].probability, b.paths[i].probability);
  }
}

TEST(ChainProperty, StochasticReversibleBoundedScaleInvariant) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + rng() % 6;
    const Frame f = random_frame(rng, dim, dim + rng() % 8);
    const FrameChain chain = build_chain(f);
    EXPECT_LE(chain.row_sum_residual(), 1e-12);
    EXPECT_LE(chain.reversibility_residual(), 1e-12);
    EXPECT_LE(chain.bound_residual(), 1e-12);
    EXPECT_GE(chain.transition_matrix().minCoeff(), 0.0);

    const Vector x = random_vector(rng, dim);
    const Vector y = random_vector(rng, dim);
    const double p = transition_prob(f, x, y);
    EXPECT_LE(p, y.squaredNorm() / f.lower_bound() + 1e-12);
    for (double t : {-3.0, 0.01, 7.5}) EXPECT_NEAR(transition_prob(f, t * x, y), p, 1e-12 * std::max(1.0, p));
  }
}
