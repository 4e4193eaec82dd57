#include <benchmark/benchmark.h>

#include <random>

#include "pframes/dpp.hpp"
#include "pframes/markov.hpp"
#include "pframes/measure.hpp"
#include "pframes/random.hpp"
#include "pframes/translation.hpp"

using namespace pframes;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  return m;
}

DppKernel projection_kernel(Eigen::Index n, Eigen::Index rank) {
  std::mt19937_64 rng(3);
  const Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(rng, n, n)).householderQ();
  const Matrix v = q.leftCols(rank);
  Matrix k = v * v.transpose();
  return DppKernel::from_matrix((0.5 * (k + k.transpose())).eval());
}

void BM_PhiloxNormal(benchmark::State& state) {
  CounterStream s(1, StreamDomain::Generic, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.normal());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxNormal);

void BM_WhiteNoiseEnsemble(benchmark::State& state) {
  const auto samples = state.range(0);
  for (auto _ : state) {
    WhiteNoiseEnsemble ens(32, samples, 7);
    benchmark::DoNotOptimize(ens.samples().data());
  }
  state.SetItemsProcessed(state.iterations() * samples * 32);
}
BENCHMARK(BM_WhiteNoiseEnsemble)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FrameBuild(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = state.range(0);
  const Matrix cols = random_matrix(rng, n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(Frame::from_columns(cols).lower_bound());
}
BENCHMARK(BM_FrameBuild)->Arg(8)->Arg(64);

void BM_Wasserstein2(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto atoms = state.range(0);
  const auto draw = [&] {
    const Matrix pts = random_matrix(rng, 3, atoms);
    std::vector<Vector> v;
    for (Eigen::Index i = 0; i < atoms; ++i) v.emplace_back(pts.col(i));
    return DiscreteMeasure::uniform(v);
  };
  const auto mu = draw(), nu = draw();
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein2(mu, nu).distance);
}
BENCHMARK(BM_Wasserstein2)->Arg(6)->Arg(50)->Arg(200);

void BM_MarkovPaths(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const FrameChain chain(Frame::from_columns(random_matrix(rng, 4, 12)));
  const Vector x = Vector::Ones(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_paths(chain, x, 5, 10000, 9).paths.size());
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_MarkovPaths)->Unit(benchmark::kMillisecond);

void BM_DppSample(benchmark::State& state) {
  const DppKernel k = projection_kernel(state.range(0), state.range(0) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(dpp_sample(k, 1000, 5).size());
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_DppSample)->Arg(6)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ReconstructMc(benchmark::State& state) {
  const WhiteNoiseEnsemble ens(16, 100000, 11);
  const Vector x = Vector::Unit(16, 0);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_mc(x, ens).error);
}
BENCHMARK(BM_ReconstructMc)->Unit(benchmark::kMillisecond);

void BM_KlExpand(benchmark::State& state) {
  Matrix cols(2, 3);
  const double h = std::sqrt(3.0) / 2.0;
  cols << 1.0, -0.5, -0.5, 0.0, h, -h;
  const Frame p = parseval_rescale(Frame::from_columns(cols));
  const WhiteNoiseEnsemble ens(8, 100000, 13);
  const Vector x = Vector::Unit(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kl_expand(p, x, ens).data());
}
BENCHMARK(BM_KlExpand)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
