#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical paths; each routine is a slow, direct evaluation of a definition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;
using Vec = std::vector<double>;

/// Cyclic Jacobi rotations; returns eigenvalues sorted ascending.
inline Vec jacobi_eigenvalues(Mat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  Vec ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Sum over all rank-one terms v v^T of a list of vectors.
inline Mat outer_sum(const std::vector<Vec>& vs, const Vec& weights = {}) {
  const std::size_t n = vs.front().size();
  Mat s(n, Vec(n, 0.0));
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const double w = weights.empty() ? 1.0 : weights[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s[i][j] += w * vs[k][i] * vs[k][j];
  }
  return s;
}

/// Determinant by cofactor expansion (n <= 8).
inline double cofactor_det(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    det += ((c % 2) ? -1.0 : 1.0) * a[0][c] * cofactor_det(minor);
  }
  return det;
}

inline Mat principal(const Mat& k, std::uint64_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < k.size(); ++i)
    if ((mask >> i) & 1u) idx.push_back(i);
  Mat s(idx.size(), Vec(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) s[a][b] = k[idx[a]][idx[b]];
  return s;
}

/// P(Phi = S) = |det(K - I_{complement of S})|, a route independent of Moebius inversion.
inline Vec dpp_exact_subset_probabilities(const Mat& k) {
  const std::size_t n = k.size();
  Vec out(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < out.size(); ++mask) {
    Mat m = k;
    for (std::size_t i = 0; i < n; ++i)
      if (!((mask >> i) & 1u)) m[i][i] -= 1.0;
    out[mask] = std::abs(cofactor_det(m));
  }
  return out;
}

/// Min over all permutations of (1/n) sum |a_i - b_pi(i)|^2 (uniform weights).
inline double w2_squared_bruteforce(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t d = 0; d < a[i].size(); ++d) c += (a[i][d] - b[perm[i]][d]) * (a[i][d] - b[perm[i]][d]);
    best = std::min(best, c / static_cast<double>(a.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// E[g_a g_b g_c g_d] for a centred Gaussian vector with covariance cov,
/// by summing over the three pairings (Isserlis).
inline double isserlis4(const Mat& cov, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return cov[a][b] * cov[c][d] + cov[a][c] * cov[b][d] + cov[a][d] * cov[b][c];
}

/// E|<x, w> w - x|^2 for w ~ N(0, I_D), by expanding every coordinate through Isserlis.
inline double reconstruction_mse(const Vec& x, std::size_t d) {
  Mat id(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) id[i][i] = 1.0;
  Vec xp(d, 0.0);
  std::copy(x.begin(), x.end(), xp.begin());
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double e_t2w2 = 0.0;  // E[<x,w>^2 w_j^2]
    double e_tw = 0.0;    // E[<x,w> w_j]
    for (std::size_t a = 0; a < d; ++a) {
      e_tw += xp[a] * id[a][j];
      for (std::size_t b = 0; b < d; ++b) e_t2w2 += xp[a] * xp[b] * isserlis4(id, a, b, j, j);
    }
    total += e_t2w2 - 2.0 * xp[j] * e_tw + xp[j] * xp[j];
  }
  return total;
}

/// Var(g_a g_b) = E[g_a^2 g_b^2] - (E[g_a g_b])^2 under Isserlis.
inline double product_variance(const Mat& cov, std::size_t a, std::size_t b) {
  return isserlis4(cov, a, a, b, b) - cov[a][b] * cov[a][b];
}

inline std::vector<Vec> random_vectors(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
  std::normal_distribution<double> n01;
  std::vector<Vec> out(count, Vec(dim));
  for (auto& v : out)
    for (auto& c : v) c = n01(rng);
  return out;
}

}  // namespace oracle
