#include "pframes/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pframes/error.hpp"
#include "pframes/stats.hpp"

namespace pframes {

DiscreteMeasure DiscreteMeasure::make(std::span<const Vector> atoms, std::span<const double> weights,
                                      bool normalize) {
  if (atoms.empty()) throw Error(Errc::InvalidMeasure, "measure needs at least one atom");
  if (atoms.size() != weights.size()) {
    throw Error(Errc::LengthMismatch, "measure has " + std::to_string(atoms.size()) + " atoms but " +
                                          std::to_string(weights.size()) + " weights");
  }
  const Eigen::Index n = atoms.front().size();
  if (n == 0) throw Error(Errc::InvalidMeasure, "atoms must have positive dimension");
  CompensatedSum total;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require_dim(atoms[i].size(), n, "atom " + std::to_string(i));
    require_finite(atoms[i], "atom " + std::to_string(i));
    if (!std::isfinite(weights[i]) || !(weights[i] > 0.0)) {
      throw Error(Errc::InvalidMeasure, "weight " + std::to_string(i) + " is not strictly positive");
    }
    total.add(weights[i]);
  }
  const double sum = total.value();
  if (!normalize && std::abs(sum - 1.0) > 1e-12) {
    throw Error(Errc::InvalidMeasure, "weights sum to " + std::to_string(sum) + ", expected 1");
  }

  std::vector<Vector> merged_atoms;
  std::vector<double> merged_weights;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double w = normalize ? weights[i] / sum : weights[i];
    auto it = std::find_if(merged_atoms.begin(), merged_atoms.end(),
                           [&](const Vector& a) { return a == atoms[i]; });
    if (it == merged_atoms.end()) {
      merged_atoms.push_back(atoms[i]);
      merged_weights.push_back(w);
    } else {
      merged_weights[static_cast<std::size_t>(it - merged_atoms.begin())] += w;
    }
  }
  Matrix a(n, static_cast<Eigen::Index>(merged_atoms.size()));
  Vector w(static_cast<Eigen::Index>(merged_weights.size()));
  for (std::size_t i = 0; i < merged_atoms.size(); ++i) {
    a.col(static_cast<Eigen::Index>(i)) = merged_atoms[i];
    w(static_cast<Eigen::Index>(i)) = merged_weights[i];
  }
  return DiscreteMeasure(std::move(a), std::move(w));
}

DiscreteMeasure::DiscreteMeasure(std::span<const Vector> atoms, std::span<const double> weights)
    : DiscreteMeasure(make(atoms, weights, false)) {}

DiscreteMeasure DiscreteMeasure::normalized(std::span<const Vector> atoms, std::span<const double> weights) {
  return make(atoms, weights, true);
}

DiscreteMeasure DiscreteMeasure::uniform(std::span<const Vector> atoms) {
  std::vector<double> w(atoms.size(), 1.0);
  return make(atoms, w, true);
}

DiscreteMeasure DiscreteMeasure::point_mass(const Vector& atom) {
  const double w = 1.0;
  return make(std::span<const Vector>(&atom, 1), std::span<const double>(&w, 1), false);
}

Matrix prob_frame_operator(const DiscreteMeasure& mu) {
  const Matrix& y = mu.atoms();
  Matrix s = y * mu.weights().asDiagonal() * y.transpose();
  return 0.5 * (s + s.transpose());
}

MeasureFrameBounds measure_frame_bounds(const DiscreteMeasure& mu) {
  const Vector ev = symmetric_eigenvalues(prob_frame_operator(mu));
  return {std::max(0.0, ev(0)), std::max(0.0, ev(ev.size() - 1))};
}

double second_moment(const DiscreteMeasure& mu) {
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < mu.size(); ++i) acc.add(mu.weights()(i) * mu.atoms().col(i).squaredNorm());
  return acc.value();
}

FunctionTable prob_analysis(const DiscreteMeasure& mu, const Vector& x) {
  require_dim(x.size(), mu.dim(), "probabilistic analysis input");
  return mu.atoms().transpose() * x;
}

Vector prob_synthesis(const DiscreteMeasure& mu, const FunctionTable& f) {
  require_dim(f.size(), mu.size(), "function table");
  return mu.atoms() * mu.weights().cwiseProduct(f);
}

FunctionTable prob_gramian_apply(const DiscreteMeasure& mu, const FunctionTable& f) {
  require_dim(f.size(), mu.size(), "function table");
  return mu.atoms().transpose() * (mu.atoms() * mu.weights().cwiseProduct(f));
}

double l2_norm_squared(const DiscreteMeasure& mu, const FunctionTable& f) {
  require_dim(f.size(), mu.size(), "function table");
  return mu.weights().dot(f.cwiseAbs2());
}

Vector lower_bound_decay(const DiscreteMeasure& mu, Eigen::Index n_max) {
  if (n_max < 1) throw Error(Errc::InvalidArgument, "n_max must be positive");
  Vector out = Vector::Zero(n_max);
  const Eigen::Index n = std::min(n_max, mu.dim());
  for (Eigen::Index k = 0; k < n; ++k) {
    CompensatedSum acc;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      const double c = mu.atoms()(k, i);
      acc.add(mu.weights()(i) * c * c);
    }
    out(k) = acc.value();
  }
  return out;
}

Wasserstein2 wasserstein2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_dim(nu.dim(), mu.dim(), "Wasserstein measures");
  Wasserstein2 out;
  out.transport = solve_transport(mu.weights(), nu.weights(), squared_distance_matrix(mu.atoms(), nu.atoms()));
  out.distance = std::sqrt(std::max(0.0, out.transport.cost));
  return out;
}

}  // namespace pframes
