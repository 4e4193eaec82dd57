#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cstdlib>
#include <set>

#include "pframes/parallel.hpp"
#include "pframes/random.hpp"
#include "pframes/stats.hpp"

using namespace pframes;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerVectors) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::apply(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::apply(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterStream, SameKeyReproducesDifferentKeysDiffer) {
  CounterStream a(42, StreamDomain::Generic, 7);
  CounterStream b(42, StreamDomain::Generic, 7);
  CounterStream c(42, StreamDomain::Generic, 8);
  CounterStream d(42, StreamDomain::MarkovPath, 7);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(CounterStream, UniformsStayInsideOpenInterval) {
  EXPECT_GT(bits_to_open_unit(0), 0.0);
  EXPECT_LT(bits_to_open_unit(~std::uint64_t{0}), 1.0);
  CounterStream s(1, StreamDomain::Generic, 0);
  SampleMoments m;
  for (int i = 0; i < 200000; ++i) m.add(s.uniform());
  EXPECT_NEAR(m.average(), 0.5, 5.0 * std::sqrt(1.0 / 12.0 / 200000.0));
  EXPECT_NEAR(m.variance(), 1.0 / 12.0, 1e-3);
}

TEST(CounterStream, BelowIsInRangeAndCoversAllValues) {
  CounterStream s(3, StreamDomain::Generic, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = s.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(NormalQuantile, MatchesBoostReference) {
  const boost::math::normal n01;
  for (double u : {1e-300, 1e-12, 0.001, 0.025, 0.3, 0.5, 0.7, 0.975, 0.999, 1.0 - 1e-12}) {
    const double ref = boost::math::quantile(n01, u);
    EXPECT_NEAR(normal_quantile(u), ref, 1e-14 * std::max(1.0, std::abs(ref))) << "u = " << u;
  }
}

TEST(WhiteNoisePair, AddressableAndDeterministic) {
  const auto a = white_noise_pair(5, 1000, 3);
  const auto b = white_noise_pair(5, 1000, 3);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, white_noise_pair(5, 1001, 3));
  EXPECT_NE(a, white_noise_pair(6, 1000, 3));
}

TEST(BlockedMoments, IndependentOfWorkerCount) {
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i) * 0.37) * 1e3 + 1e-3 * static_cast<double>(i); };
  setenv("FRAMES_THREADS", "1", 1);
  const auto one = blocked_moments(100003, f);
  setenv("FRAMES_THREADS", "8", 1);
  const auto eight = blocked_moments(100003, f);
  unsetenv("FRAMES_THREADS");
  EXPECT_EQ(one.average(), eight.average());
  EXPECT_EQ(one.variance(), eight.variance());
}

TEST(BlockedMoments, MatchesTwoPassReference) {
  std::vector<double> xs;
  for (int i = 0; i < 50000; ++i) xs.push_back(1e6 + std::cos(i * 1.1));
  const auto m = blocked_moments(xs.size(), [&](std::size_t i) { return xs[i]; });
  long double mean = 0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  long double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= (xs.size() - 1);
  EXPECT_NEAR(m.average(), static_cast<double>(mean), 1e-9);
  EXPECT_NEAR(m.variance(), static_cast<double>(var), 1e-9);
}

TEST(WorkerCount, ReadsEnvironment) {
  setenv("FRAMES_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("FRAMES_THREADS", "nonsense", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("FRAMES_THREADS");
}
