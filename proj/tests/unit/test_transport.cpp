#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pframes/error.hpp"
#include "pframes/measure.hpp"
#include "pframes/transport.hpp"

using namespace pframes;
using namespace fixtures;

namespace {

std::vector<Vector> random_atoms(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::vector<Vector> out;
  for (const auto& v : oracle::random_vectors(rng, n, dim)) out.push_back(to_eigen(v));
  return out;
}

DiscreteMeasure random_weighted(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> w(0.05, 1.0);
  std::vector<double> ws(n);
  for (auto& x : ws) x = w(rng);
  return DiscreteMeasure::normalized(random_atoms(rng, n, dim), ws);
}

// Weak duality makes any feasible (u, v) with u_i + v_j <= c_ij a lower bound;
// equality with the primal cost certifies optimality.
void expect_certified_optimal(const TransportSolution& s, const Vector& a, const Vector& b, const Matrix& c) {
  EXPECT_LE(s.plan.marginal_residual(a, b), 1e-10);
  EXPECT_GE(s.plan.mass.minCoeff(), 0.0);
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      EXPECT_LE(s.row_potential(i) + s.col_potential(j), c(i, j) + 1e-9 * scale);
    }
  }
  const double dual = a.dot(s.row_potential) + b.dot(s.col_potential);
  EXPECT_NEAR(dual, s.cost, 1e-9 * scale);
}

}  // namespace

TEST(Transport, SinglePlanForPointMasses) {
  const Vector a = vec({1, 2});
  const Vector b = vec({-2, 6});
  const auto w = wasserstein2(DiscreteMeasure::point_mass(a), DiscreteMeasure::point_mass(b));
  EXPECT_NEAR(w.distance, (a - b).norm(), 1e-14);
  EXPECT_DOUBLE_EQ(w.transport.plan.mass(0, 0), 1.0);
}

TEST(Transport, SelfDistanceIsZeroWithDiagonalPlan) {
  std::mt19937_64 rng(31);
  const auto mu = random_weighted(rng, 5, 3);
  const auto w = wasserstein2(mu, mu);
  EXPECT_LT(w.distance, 1e-9);
  EXPECT_TRUE(Matrix(w.transport.plan.mass.diagonal().asDiagonal()).isApprox(w.transport.plan.mass, 1e-12));
}

TEST(Transport, TwoAtomExampleMatchesBothCouplings) {
  const std::vector<Vector> a{vec({0, 0}), vec({1, 0})};
  const std::vector<Vector> b{vec({0, 0}), vec({2, 0})};
  const auto w = wasserstein2(DiscreteMeasure::uniform(a), DiscreteMeasure::uniform(b));
  // Couplings: identity pairing costs (0 + 1)/2, swapped pairing (4 + 1)/2.
  const double expected = std::min((0.0 + 1.0) / 2.0, (4.0 + 1.0) / 2.0);
  EXPECT_NEAR(w.distance * w.distance, expected, 1e-15);
  EXPECT_NEAR(w.transport.plan.mass(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(w.transport.plan.mass(1, 1), 0.5, 1e-15);
}

TEST(Transport, RejectsMismatchedInputs) {
  EXPECT_THROW(wasserstein2(DiscreteMeasure::point_mass(vec({1, 2})), DiscreteMeasure::point_mass(vec({1}))), Error);
  EXPECT_THROW(solve_transport(vec({0.5, 0.5}), vec({1.0, 0.5}), Matrix::Zero(2, 2)), Error);
  EXPECT_THROW(solve_transport(vec({-0.5, 1.5}), vec({0.5, 0.5}), Matrix::Zero(2, 2)), Error);
  EXPECT_THROW(solve_transport(vec({1.0}), vec({0.5, 0.5}), Matrix::Zero(2, 2)), Error);
}

TEST(Transport, MatchesBruteForceAssignmentsForUniformMeasures) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t dim = 1 + rng() % 4;
    const auto a = random_atoms(rng, n, dim);
    const auto b = random_atoms(rng, n, dim);
    std::vector<oracle::Vec> sa, sb;
    for (const auto& v : a) sa.push_back(to_std(v));
    for (const auto& v : b) sb.push_back(to_std(v));
    const double brute = oracle::w2_squared_bruteforce(sa, sb);
    const auto w = wasserstein2(DiscreteMeasure::uniform(a), DiscreteMeasure::uniform(b));
    EXPECT_NEAR(w.distance * w.distance, brute, 1e-9 * std::max(1.0, brute));
  }
}

TEST(Transport, DualCertificateOnWeightedAndDegenerateProblems) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = random_weighted(rng, 1 + rng() % 7, 2);
    const auto nu = random_weighted(rng, 1 + rng() % 7, 2);
    const Matrix c = squared_distance_matrix(mu.atoms(), nu.atoms());
    expect_certified_optimal(solve_transport(mu.weights(), nu.weights(), c), mu.weights(), nu.weights(), c);
  }
  // Integer costs with equal marginals produce many degenerate pivots.
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(rng() % 6);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 6);
    Matrix c(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) c(i, j) = static_cast<double>(rng() % 4);
    const Vector a = Vector::Constant(m, 1.0 / static_cast<double>(m));
    const Vector b = Vector::Constant(n, 1.0 / static_cast<double>(n));
    expect_certified_optimal(solve_transport(a, b, c), a, b, c);
  }
}

TEST(Transport, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_weighted(rng, 1 + rng() % 5, 2);
    const auto q = random_weighted(rng, 1 + rng() % 5, 2);
    const auto r = random_weighted(rng, 1 + rng() % 5, 2);
    const double pq = wasserstein2(p, q).distance;
    EXPECT_NEAR(pq, wasserstein2(q, p).distance, 1e-9);
    EXPECT_LE(pq, wasserstein2(p, r).distance + wasserstein2(r, q).distance + 1e-9);
    EXPECT_GT(pq, 1e-9);
    EXPECT_LT(wasserstein2(p, p).distance, 1e-9);
  }
}

TEST(Transport, PermutedAtomsAreIndiscernible) {
  std::mt19937_64 rng(35);
  const auto atoms = random_atoms(rng, 5, 3);
  std::vector<double> w{0.1, 0.2, 0.3, 0.15, 0.25};
  std::vector<Vector> rev(atoms.rbegin(), atoms.rend());
  std::vector<double> wrev(w.rbegin(), w.rend());
  EXPECT_LT(wasserstein2(DiscreteMeasure(atoms, w), DiscreteMeasure(rev, wrev)).distance, 1e-9);
}
