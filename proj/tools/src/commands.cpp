#include "pframes_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "pframes/error.hpp"
#include "pframes/markov.hpp"
#include "pframes/random.hpp"
#include "pframes/stats.hpp"
#include "pframes/translation.hpp"

namespace pframes::cli {
namespace {

using io::Json;
using Index = Eigen::Index;

constexpr std::string_view kBuiltin = "builtin:";

// Generic-domain stream indices; one per consumer so suites stay independent.
enum Slot : std::uint64_t {
  kFrameProbes = 1,
  kRandomFrames,
  kRandomMeasures,
  kRandomKernel,
  kGaussianVectors,
  kTranslateVectors,
  kKlVectors,
};

Vector normal_vector(CounterStream& s, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = s.normal();
  return v;
}

Vector unit_vector(CounterStream& s, Index n) {
  Vector v = normal_vector(s, n);
  while (v.norm() == 0.0) v = normal_vector(s, n);
  return v / v.norm();
}

Vector basis(Index i, Index n) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

Index draw_between(CounterStream& s, Index lo, Index hi) {
  return lo + static_cast<Index>(s.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Frame mercedes_benz() {
  const double h = std::sqrt(3.0) / 2.0;
  Matrix cols(2, 3);
  cols << 1.0, -0.5, -0.5, 0.0, h, -h;
  return Frame::from_columns(cols);
}

Frame builtin_frame(std::string_view name) {
  if (name == "mercedes-benz") return mercedes_benz();
  if (name == "mercedes-benz-parseval") return parseval_rescale(mercedes_benz());
  if (name.size() > 3 && name.substr(0, 3) == "onb") {
    const std::string digits(name.substr(3));
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 3) {
      const int n = std::stoi(digits);
      if (n >= 1 && n <= 256) return Frame::from_columns(Matrix::Identity(n, n));
    }
  }
  throw Error(Errc::ConfigError, "unknown builtin frame '" + std::string(name) +
                                     "' (expected onbN, mercedes-benz or mercedes-benz-parseval)");
}

bool is_builtin(const std::string& source) { return source.rfind(kBuiltin, 0) == 0; }

Json vector_json(const Vector& v) { return io::to_json(v); }

std::string join_indices(const std::vector<Index>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? " " : "") + std::to_string(idx[i]);
  return out;
}

const std::string& input_at(const ExperimentConfig& c, std::size_t i, std::string_view what) {
  if (c.inputs.size() <= i) throw Error(Errc::ConfigError, "input " + std::to_string(i + 1) + " (" + std::string(what) + ") is required");
  return c.inputs[i];
}

std::string input_or(const ExperimentConfig& c, std::string fallback) {
  return c.inputs.empty() ? std::move(fallback) : c.inputs.front();
}

// ---- frames ---------------------------------------------------------------

struct FrameProbe {
  double sandwich_slack = -std::numeric_limits<double>::infinity();
  double dual_error = 0.0;
};

// Worst relative violation of alpha|x|^2 <= sum <x,phi>^2 <= beta|x|^2 and of
// the canonical dual reconstruction over `probes` Gaussian x.
FrameProbe probe_frame(const Frame& frame, CounterStream& s, int probes) {
  FrameProbe out;
  const Frame dual = dual_frame(frame);
  for (int t = 0; t < probes; ++t) {
    const Vector x = normal_vector(s, frame.dim());
    const double nx = x.squaredNorm();
    if (nx == 0.0) continue;
    const double energy = analysis(frame, x).squaredNorm();
    out.sandwich_slack =
        std::max({out.sandwich_slack, (frame.lower_bound() * nx - energy) / nx, (energy - frame.upper_bound() * nx) / nx});
    const Vector back = synthesis(frame, analysis(dual, x));
    out.dual_error = std::max(out.dual_error, (back - x).norm() / std::sqrt(nx));
  }
  return out;
}

Json frame_summary(const Frame& f) {
  return {{"dim", f.dim()},
          {"size", f.size()},
          {"lower_bound", f.lower_bound()},
          {"upper_bound", f.upper_bound()},
          {"tight", f.is_tight()},
          {"parseval", f.is_parseval()},
          {"frame_operator", io::to_json(f.frame_operator())}};
}

void frames_suite(const Frame& frame, std::uint64_t seed, Checks checks, Json& payload) {
  CounterStream s(seed, StreamDomain::Generic, kFrameProbes);
  const FrameProbe p = probe_frame(frame, s, 1000);
  checks.at_most("sandwich_slack", p.sandwich_slack, checks.tolerances().bound);
  checks.at_most("dual_reconstruction", p.dual_error, checks.tolerances().bound);
  payload = frame_summary(frame);
}

Frame random_frame(CounterStream& s) {
  const Index n = draw_between(s, 1, 8);
  const Index count = draw_between(s, n, 16);
  Matrix cols(n, count);
  for (Index k = 0; k < count; ++k) cols.col(k) = normal_vector(s, n);
  return Frame::from_columns(cols);
}

void random_frames_suite(std::uint64_t seed, int count, Checks checks, Json& payload) {
  CounterStream s(seed, StreamDomain::Generic, kRandomFrames);
  FrameProbe worst;
  for (int t = 0; t < count; ++t) {
    const Frame f = random_frame(s);
    const FrameProbe p = probe_frame(f, s, 1000);
    worst.sandwich_slack = std::max(worst.sandwich_slack, p.sandwich_slack);
    worst.dual_error = std::max(worst.dual_error, p.dual_error);
  }
  checks.at_most("sandwich_slack", worst.sandwich_slack, checks.tolerances().bound);
  checks.at_most("dual_reconstruction", worst.dual_error, checks.tolerances().bound);
  payload = {{"frames", count}, {"probes_per_frame", 1000}};
}

// ---- wasserstein ----------------------------------------------------------

Table coupling_table(const Matrix& mass) {
  Table t{{"source", "target", "mass"}, {}};
  for (Index i = 0; i < mass.rows(); ++i)
    for (Index j = 0; j < mass.cols(); ++j)
      if (mass(i, j) > 0.0) t.rows.push_back({std::to_string(i), std::to_string(j), format_double(mass(i, j))});
  return t;
}

void wasserstein_suite(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Checks checks, Json& payload) {
  const auto& tol = checks.tolerances();
  const Wasserstein2 w = wasserstein2(mu, nu);
  const Wasserstein2 back = wasserstein2(nu, mu);
  const Wasserstein2 self = wasserstein2(mu, mu);
  const TransportSolution& t = w.transport;
  const Matrix cost = squared_distance_matrix(mu.atoms(), nu.atoms());

  double dual_value = 0.0, infeasibility = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < cost.rows(); ++i) dual_value += mu.weights()(i) * t.row_potential(i);
  for (Index j = 0; j < cost.cols(); ++j) dual_value += nu.weights()(j) * t.col_potential(j);
  for (Index i = 0; i < cost.rows(); ++i)
    for (Index j = 0; j < cost.cols(); ++j)
      infeasibility = std::max(infeasibility, t.row_potential(i) + t.col_potential(j) - cost(i, j));
  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());

  checks.at_most("marginal_residual", t.plan.marginal_residual(mu.weights(), nu.weights()), tol.exact);
  checks.at_most("dual_infeasibility", infeasibility, tol.bound * scale);
  checks.near("duality_gap", dual_value, t.cost, tol.bound);
  checks.near("symmetry", back.distance, w.distance, tol.bound);
  checks.near("self_distance", self.distance, 0.0, tol.bound);
  payload = {{"distance", w.distance},
             {"squared_distance", t.cost},
             {"pivots", t.pivots},
             {"coupling", io::to_json(t.plan.mass)}};
}

DiscreteMeasure random_uniform_measure(CounterStream& s, Index dim, Index atoms) {
  std::vector<Vector> pts;
  for (Index i = 0; i < atoms; ++i) pts.push_back(normal_vector(s, dim));
  return DiscreteMeasure::uniform(pts);
}

// Uniform measures with equal atom counts have a permutation as optimal coupling.
double assignment_cost_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const Index n = mu.size();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (Index i = 0; i < n; ++i) c += (mu.atoms().col(i) - nu.atoms().col(perm[static_cast<std::size_t>(i)])).squaredNorm();
    best = std::min(best, c / static_cast<double>(n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void random_wasserstein_suite(std::uint64_t seed, int pairs, Checks checks, Json& payload) {
  const auto& tol = checks.tolerances();
  CounterStream s(seed, StreamDomain::Generic, kRandomMeasures);
  double worst_assignment = 0.0, worst_triangle = -std::numeric_limits<double>::infinity(), worst_symmetry = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Index dim = draw_between(s, 1, 4);
    const Index n = draw_between(s, 1, 6);
    const auto a = random_uniform_measure(s, dim, n);
    const auto b = random_uniform_measure(s, dim, n);
    const auto c = random_uniform_measure(s, dim, draw_between(s, 1, 6));
    const double ab = wasserstein2(a, b).distance;
    worst_assignment = std::max(worst_assignment, std::abs(ab * ab - assignment_cost_bruteforce(a, b)));
    worst_symmetry = std::max(worst_symmetry, std::abs(ab - wasserstein2(b, a).distance));
    worst_triangle = std::max(worst_triangle, wasserstein2(a, c).distance - ab - wasserstein2(b, c).distance);
  }
  checks.at_most("assignment_bruteforce_gap", worst_assignment, tol.table);
  checks.at_most("symmetry_gap", worst_symmetry, tol.bound);
  checks.at_most("triangle_excess", worst_triangle, tol.bound);
  payload = {{"pairs", pairs}};
}

// ---- decay ----------------------------------------------------------------

void decay_suite(const DiscreteMeasure& mu, Index n_max, Checks checks, Json& payload, std::optional<Table>* table) {
  const auto& tol = checks.tolerances();
  const Vector f = lower_bound_decay(mu, n_max);
  const double m2 = second_moment(mu);
  const MeasureFrameBounds b = measure_frame_bounds(mu);
  CompensatedSum total;
  for (Index n = 0; n < f.size(); ++n) total.add(f(n));
  double tail = 0.0;
  for (Index n = mu.dim(); n < f.size(); ++n) tail = std::max(tail, std::abs(f(n)));

  // The sum identity only holds when every coordinate is embedded.
  if (n_max >= mu.dim()) checks.near("sum_equals_second_moment", total.value(), m2, tol.exact);
  checks.at_most("tail_zero", tail, 0.0);
  checks.at_most("bounded_by_upper", f.maxCoeff(), b.upper + tol.bound * std::max(1.0, b.upper));
  payload = {{"dim", mu.dim()},
             {"n_max", n_max},
             {"second_moment", m2},
             {"lower_bound", b.lower},
             {"upper_bound", b.upper},
             {"sequence", vector_json(f)}};
  if (table) {
    Table t{{"n", "f"}, {}};
    for (Index n = 0; n < f.size(); ++n) t.rows.push_back({std::to_string(n + 1), format_double(f(n))});
    *table = std::move(t);
  }
}

DiscreteMeasure random_measure(CounterStream& s) {
  const Index dim = draw_between(s, 1, 8);
  const Index atoms = draw_between(s, 1, 10);
  std::vector<Vector> pts;
  std::vector<double> w;
  for (Index i = 0; i < atoms; ++i) {
    pts.push_back(normal_vector(s, dim));
    w.push_back(0.05 + s.uniform());
  }
  return DiscreteMeasure::normalized(pts, w);
}

// ---- markov ---------------------------------------------------------------

void markov_suite(const Frame& frame, const Vector& start, int horizon, int paths, std::uint64_t seed, Checks checks,
                  Json& payload, std::vector<std::string>& warnings, std::optional<Table>* table) {
  const auto& tol = checks.tolerances();
  const FrameChain chain = build_chain(frame);
  checks.at_most("row_sum_residual", chain.row_sum_residual(), tol.exact);
  checks.at_most("reversibility_residual", chain.reversibility_residual(), tol.exact);
  checks.at_most("bound_residual", chain.bound_residual(), tol.exact);

  const PathSet ps = sample_paths(chain, start, horizon, paths, seed);
  double recompute = 0.0;
  for (const auto& p : ps.paths)
    recompute = std::max(recompute, std::abs(p.probability - path_probability(chain, start, p.indices)));
  checks.at_most("path_probability_recompute", recompute, tol.exact);

  Json freq = nullptr;
  const Index n = chain.size();
  const double space = std::pow(static_cast<double>(n), horizon);
  if (space <= 4096.0) {
    const auto cells = static_cast<std::size_t>(space);
    std::vector<double> probs(cells), counts(cells, 0.0);
    std::vector<Index> idx(static_cast<std::size_t>(horizon));
    for (std::size_t code = 0; code < cells; ++code) {
      std::size_t c = code;
      for (int s = horizon - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = static_cast<Index>(c % static_cast<std::size_t>(n));
        c /= static_cast<std::size_t>(n);
      }
      probs[code] = path_probability(chain, start, idx);
    }
    std::size_t distinct = 0;
    for (const auto& p : ps.paths) {
      std::size_t code = 0;
      for (const Index i : p.indices) code = code * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
      if (counts[code]++ == 0.0) ++distinct;
    }
    const ChiSquareTest chi = chi_square_goodness_of_fit(counts, probs);
    if (chi.dof == 0) {
      checks.exact("distinct_paths", static_cast<double>(distinct), 1.0);
    } else {
      checks.at_least("path_chi_square_p_value", chi.p_value, tol.p_min);
    }
    freq = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}, {"distinct_paths", distinct}};
  } else {
    warnings.push_back("markov: path space of size " + format_double(space) + " too large for the chi-square check");
  }

  payload = {{"frame", frame_summary(frame)},
             {"start", vector_json(start)},
             {"start_distribution", vector_json(start_distribution(frame, start))},
             {"normalizers", vector_json(chain.normalizers())},
             {"transition_matrix", io::to_json(chain.transition_matrix())},
             {"summary",
              {{"row_sum_residual", chain.row_sum_residual()},
               {"reversibility_residual", chain.reversibility_residual()},
               {"bound_residual", chain.bound_residual()}}},
             {"horizon", horizon},
             {"paths", paths},
             {"path_frequencies", freq}};
  if (table) {
    Table t{{"path", "indices", "probability"}, {}};
    for (std::size_t i = 0; i < ps.paths.size(); ++i)
      t.rows.push_back({std::to_string(i), join_indices(ps.paths[i].indices), format_double(ps.paths[i].probability)});
    *table = std::move(t);
  }
}

// ---- dpp ------------------------------------------------------------------

void dpp_suite(const DppKernel& kernel, int draws, std::uint64_t seed, bool bruteforce, Checks checks, Json& payload,
               std::optional<Table>* table) {
  const auto& tol = checks.tolerances();
  const Index n = kernel.size();
  const auto sample = dpp_sample(kernel, draws, seed);

  SampleMoments card;
  std::vector<SampleMoments> incl(static_cast<std::size_t>(n));
  for (const auto& s : sample) {
    card.add(static_cast<double>(s.size()));
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (const Index i : s.indices()) hit[static_cast<std::size_t>(i)] = true;
    for (Index i = 0; i < n; ++i) incl[static_cast<std::size_t>(i)].add(hit[static_cast<std::size_t>(i)] ? 1.0 : 0.0);
  }
  const Vector& lam = kernel.eigenvalues();
  const double trace = lam.sum();
  checks.mc("mean_cardinality", make_estimate(card.average(), card.std_error(), draws, trace));
  for (Index i = 0; i < n; ++i) {
    const auto& m = incl[static_cast<std::size_t>(i)];
    checks.mc("inclusion[" + std::to_string(i) + "]", make_estimate(m.average(), m.std_error(), draws, kernel.matrix()(i, i)));
  }

  payload = {{"size", n},
             {"eigenvalues", vector_json(lam)},
             {"trace", trace},
             {"cardinality_variance", (lam.array() * (1.0 - lam.array())).sum()},
             {"draws", draws},
             {"mean_cardinality", card.average()}};
  if (bruteforce) {
    const auto exact = subset_distribution_bruteforce(kernel);
    CompensatedSum total;
    for (const double p : exact) total.add(p);
    const double det_empty = (Matrix::Identity(n, n) - kernel.matrix()).determinant();
    const double tv = total_variation(exact, empirical_subset_distribution(sample, n));
    checks.near("subset_table_sum", total.value(), 1.0, tol.table);
    checks.near("empty_set_probability", exact.front(), det_empty, tol.table);
    checks.at_most("total_variation", tv, tol.tv_max);
    payload["total_variation"] = tv;
  }
  if (table) {
    Table t{{"draw", "points"}, {}};
    for (std::size_t i = 0; i < sample.size(); ++i) {
      t.rows.push_back({std::to_string(i), join_indices(sample[i].indices())});
    }
    *table = std::move(t);
  }
}

DppKernel random_kernel(CounterStream& s, Index n) {
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = s.normal();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = s.uniform();
  Matrix k = q * lam.asDiagonal() * q.transpose();
  k = 0.5 * (k + k.transpose()).eval();
  return DppKernel::from_matrix(k);
}

// ---- gaussian -------------------------------------------------------------

bool wants(const std::vector<std::string>& checks, std::string_view name) {
  return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
}

void gaussian_suite(const WhiteNoiseEnsemble& ens, const std::vector<std::string>& which, std::uint64_t seed,
                    Checks checks, Json& payload) {
  const Index d = ens.dim();
  const auto m = static_cast<double>(ens.sample_count());
  CounterStream s(seed, StreamDomain::Generic, kGaussianVectors);
  const Vector x = unit_vector(s, d);
  const Vector y = unit_vector(s, d);
  Vector probe = unit_vector(s, d);
  if (d >= 2) {
    probe -= probe.dot(y) * y;
    probe /= probe.norm();
  }

  checks.exact("ensemble_sanity", ens.within_sanity_band() ? 1.0 : 0.0, 1.0);
  payload = {{"dim", d}, {"samples", ens.sample_count()}, {"seed", ens.seed()}};

  if (wants(which, "isometry")) {
    checks.mc("isometry.e1", ito_isometry_check(basis(0, d), ens));
    checks.mc("isometry.random_unit", ito_isometry_check(x, ens));
  }
  if (wants(which, "charfn")) {
    const auto one = char_functional_check(basis(0, d), ens);
    checks.mc("charfn.e1.real", one.real);
    checks.mc("charfn.e1.imag", one.imag);
    if (d >= 2) {
      const auto two = char_functional_check(basis(0, d) + basis(1, d), ens);
      checks.mc("charfn.e1_plus_e2.real", two.real);
      checks.mc("charfn.e1_plus_e2.imag", two.imag);
    }
  }
  if (wants(which, "moments")) {
    for (int k = 1; k <= 3; ++k) {
      checks.mc("moments.even.k" + std::to_string(k), moment_check(x, k, MomentParity::Even, ens));
      checks.mc("moments.odd.k" + std::to_string(k), moment_check(x, k, MomentParity::Odd, ens));
    }
  }
  if (wants(which, "covariance") && d >= 2) {
    const Frame mb = mercedes_benz();
    const GramMatrix g = gram(mb);
    const Matrix cov = empirical_covariance(gaussian_process_from_frame(mb, ens));
    const Matrix se = covariance_std_error(g, ens.sample_count());
    checks.at_most("covariance.frobenius", (cov - g.entries()).norm(), 5.0 * 3.0 / std::sqrt(m));
    checks.mc("covariance.entry01", make_estimate(cov(0, 1), se(0, 1), ens.sample_count(), g.entries()(0, 1)));
    payload["covariance"] = io::to_json(cov);
  }
  if (wants(which, "reconstruct")) {
    const Reconstruction r = reconstruct_mc(x, ens);
    checks.at_most("reconstruct.error", r.error, 4.0 * std::sqrt((static_cast<double>(d) + 1.0) / m));
  }
  if (wants(which, "projection")) {
    checks.mc("projection.self", projection_check(y, y, ens));
    if (d >= 2) checks.mc("projection.orthogonal", projection_check(y, probe, ens));
  }
}

// ---- translate / kl -------------------------------------------------------

void translate_suite(const Vector& x, const Vector& y, const WhiteNoiseEnsemble& ens, Checks checks, Json& payload,
                     std::vector<std::string>& warnings) {
  if (x.squaredNorm() > 4.0)
    warnings.push_back("translate: |x|^2 = " + format_double(x.squaredNorm()) +
                       " > 4; importance weights have variance e^{|x|^2} - 1 and the z bands lose power");
  double cocycle = 0.0;
  const Index probes = std::min<Index>(ens.sample_count(), 1000);
  for (Index m = 0; m < probes; ++m) cocycle = std::max(cocycle, cocycle_check(x, y, ens.sample(m)).relative_residual());
  checks.at_most("cocycle_relative_residual", cocycle, checks.tolerances().exact);
  checks.mc("rn_density_mean", rn_density_mean_check(x, ens));
  checks.mc("second_moment", translated_second_moment(x, y, ens));
  for (int power : {1, 2}) {
    const ChangeOfVariables c = change_of_variables_check(x, y, power, ens);
    const double se = std::hypot(c.weighted.std_error, c.shifted.std_error);
    checks.mc("change_of_variables.power" + std::to_string(power),
              McEstimate{c.weighted.value, c.shifted.value, se, c.weighted.sample_count, c.z_score});
  }
  payload = {{"x", vector_json(x)}, {"y", vector_json(y)}, {"x_norm_squared", x.squaredNorm()}};
}

void kl_suite(const Frame& frame, const Vector& x, const WhiteNoiseEnsemble& ens, Checks checks, Json& payload) {
  const McEstimate e = kl_variance_check(frame, x, ens);
  checks.mc("variance", e);
  payload = {{"x", vector_json(x)}, {"frame", frame_summary(frame)}, {"target", e.target}};
}

Vector start_vector(const ExperimentConfig& c, const Frame& frame) {
  if (c.start_vector) return *c.start_vector;
  const Index i = c.start_index.value_or(0);
  if (i >= frame.size())
    throw Error(Errc::IndexOutOfRange, "start_index " + std::to_string(i) + " outside a frame of size " + std::to_string(frame.size()));
  return frame.vector(i);
}

int checked_int(std::int64_t v, std::string_view field) {
  if (v > std::numeric_limits<int>::max()) throw Error(Errc::ConfigError, std::string(field) + " is too large");
  return static_cast<int>(v);
}

WhiteNoiseEnsemble ensemble_for(const ExperimentConfig& c) {
  return WhiteNoiseEnsemble(c.dim, c.samples, c.seed);
}

// ---- verify-all -----------------------------------------------------------

void verify_all(const ExperimentConfig& c, Checks checks, Json& payload, std::vector<std::string>& warnings) {
  if (c.dim < 3) throw Error(Errc::ConfigError, "verify-all needs dim >= 3");
  const int draws = checked_int(std::min<std::int64_t>(c.samples, 200000), "samples");

  frames_suite(mercedes_benz(), c.seed, checks.nested("frames.mercedes_benz"), payload["frames.mercedes_benz"]);
  random_frames_suite(c.seed, 20, checks.nested("frames.random"), payload["frames.random"]);

  {
    CounterStream s(c.seed, StreamDomain::Generic, kRandomMeasures);
    const auto mu = random_measure(s), nu = random_measure(s);
    // A translate of mu by v sits at distance exactly |v|.
    const Vector v = Vector::Constant(mu.dim(), 0.5);
    std::vector<Vector> moved;
    for (Index i = 0; i < mu.size(); ++i) moved.push_back(mu.atoms().col(i) + v);
    const auto shifted = DiscreteMeasure::normalized(moved, {mu.weights().data(), static_cast<std::size_t>(mu.size())});
    auto w = checks.nested("wasserstein.translate");
    wasserstein_suite(mu, shifted, w, payload["wasserstein.translate"]);
    w.near("closed_form", wasserstein2(mu, shifted).distance, v.norm(), checks.tolerances().bound);
    decay_suite(nu, c.n_max, checks.nested("decay"), payload["decay"], nullptr);
  }
  random_wasserstein_suite(c.seed, 100, checks.nested("wasserstein.random"), payload["wasserstein.random"]);

  markov_suite(builtin_frame("onb3"), basis(0, 3), 3, draws, c.seed, checks.nested("markov.onb3"),
               payload["markov.onb3"], warnings, nullptr);
  const Frame mb = mercedes_benz();
  markov_suite(mb, mb.vector(0), 2, draws, c.seed, checks.nested("markov.mercedes_benz"), payload["markov.mercedes_benz"],
               warnings, nullptr);

  dpp_suite(kernel_from_frame(mb), draws, c.seed, true, checks.nested("dpp.mercedes_benz"), payload["dpp.mercedes_benz"],
            nullptr);
  {
    CounterStream s(c.seed, StreamDomain::Generic, kRandomKernel);
    dpp_suite(random_kernel(s, 5), draws, c.seed, true, checks.nested("dpp.random5"), payload["dpp.random5"], nullptr);
  }

  const WhiteNoiseEnsemble ens = ensemble_for(c);
  gaussian_suite(ens, {}, c.seed, checks.nested("gaussian"), payload["gaussian"]);

  CounterStream s(c.seed, StreamDomain::Generic, kTranslateVectors);
  const Vector y = unit_vector(s, c.dim);
  Vector perp = unit_vector(s, c.dim);
  perp -= perp.dot(y) * y;
  perp /= perp.norm();
  translate_suite(Vector::Zero(c.dim), y, ens, checks.nested("translate.zero_x"), payload["translate.zero_x"], warnings);
  translate_suite(perp, y, ens, checks.nested("translate.orthogonal"), payload["translate.orthogonal"], warnings);
  translate_suite(y, y, ens, checks.nested("translate.equal_unit"), payload["translate.equal_unit"], warnings);

  const Frame parseval = parseval_rescale(mb);
  CounterStream k(c.seed, StreamDomain::Generic, kKlVectors);
  for (int t = 0; t < 3; ++t) {
    const std::string name = "kl.mercedes_benz.x" + std::to_string(t);
    kl_suite(parseval, unit_vector(k, 2), ens, checks.nested(name), payload[name]);
  }
}

Report dispatch(const ExperimentConfig& c, const RunOptions& opt) {
  Report r;
  r.command = c.command;
  r.config = config_to_json(c);
  Checks checks(r.records, c.tolerances);
  std::optional<Table>* table = opt.table ? &r.table : nullptr;

  switch (c.command) {
    case Command::Frames:
      frames_suite(load_frame(input_or(c, "builtin:mercedes-benz")), c.seed, checks, r.payload);
      break;
    case Command::Wasserstein: {
      const auto mu = load_measure(input_at(c, 0, "source measure"));
      const auto nu = load_measure(input_at(c, 1, "target measure"));
      wasserstein_suite(mu, nu, checks, r.payload);
      if (table) r.table = coupling_table(wasserstein2(mu, nu).transport.plan.mass);
      break;
    }
    case Command::Decay:
      decay_suite(load_measure(input_at(c, 0, "measure")), c.n_max, checks, r.payload, table);
      break;
    case Command::Markov: {
      const Frame f = load_frame(input_or(c, "builtin:mercedes-benz"));
      markov_suite(f, start_vector(c, f), checked_int(c.horizon, "horizon"), checked_int(c.paths, "paths"), c.seed, checks, r.payload,
                   r.warnings, table);
      break;
    }
    case Command::Dpp:
      dpp_suite(load_kernel(input_or(c, "builtin:mercedes-benz")), checked_int(c.samples, "samples"), c.seed,
                c.bruteforce, checks, r.payload, table);
      break;
    case Command::Gaussian:
      gaussian_suite(ensemble_for(c), c.checks, c.seed, checks, r.payload);
      break;
    case Command::Translate: {
      const Vector x = c.x.value_or(basis(0, 1));
      const Vector y = c.y.value_or(basis(0, 1));
      translate_suite(x, y, ensemble_for(c), checks, r.payload, r.warnings);
      break;
    }
    case Command::Kl: {
      Frame f = load_frame(input_or(c, "builtin:mercedes-benz-parseval"));
      if (c.rescale) f = parseval_rescale(f);
      kl_suite(f, c.x.value_or(basis(0, f.dim())), ensemble_for(c), checks, r.payload);
      break;
    }
    case Command::VerifyAll:
      verify_all(c, checks, r.payload, r.warnings);
      break;
  }
  return r;
}

}  // namespace

Frame load_frame(const std::string& source) {
  if (is_builtin(source)) return builtin_frame(std::string_view(source).substr(kBuiltin.size()));
  return io::frame_from_json(io::read_json_file(source));
}

DiscreteMeasure load_measure(const std::string& source) {
  if (is_builtin(source)) throw Error(Errc::ConfigError, "measures have no builtin sources: " + source);
  return io::measure_from_json(io::read_json_file(source));
}

DppKernel load_kernel(const std::string& source) {
  if (is_builtin(source)) return kernel_from_frame(load_frame(source));
  const Json j = io::read_json_file(source);
  if (j.is_object() && j.contains("k")) return io::kernel_from_json(j);
  return kernel_from_frame(io::frame_from_json(j));
}

Report run(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  try {
    return dispatch(config, options);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(command_name(config.command)) + ": " + e.detail());
  }
}

}  // namespace pframes::cli
