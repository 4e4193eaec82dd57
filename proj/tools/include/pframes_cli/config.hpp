#pragma once

// Experiment configuration shared by every subcommand. Parsed either from CLI
// flags or from a JSON document; both paths end in validate().

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pframes/io.hpp"

namespace pframes::cli {

enum class Command { Frames, Wasserstein, Decay, Markov, Dpp, Gaussian, Translate, Kl, VerifyAll };

std::string_view command_name(Command c) noexcept;
/// ConfigError for anything outside the nine command names.
Command parse_command(std::string_view name);
const std::vector<std::string_view>& command_names();

/// Pass thresholds. Keys in JSON match the member names.
struct Tolerances {
  double z_max = 4.0;    // Monte Carlo |z| band
  double exact = 1e-12;  // algebraic identities
  double bound = 1e-10;  // eigenvalue-derived inequalities
  double table = 1e-9;   // brute-force probability tables
  double tv_max = 0.02;  // sampler-vs-oracle total variation
  double p_min = 1e-3;   // chi-square p-value floor
};

inline constexpr std::string_view kGaussianChecks[] = {"isometry", "charfn", "moments",
                                                       "covariance", "reconstruct", "projection"};

struct ExperimentConfig {
  Command command = Command::VerifyAll;
  std::uint64_t seed = 7;
  std::int64_t samples = 100000;
  std::int64_t dim = 32;
  Tolerances tolerances;
  /// Frame, measure or kernel sources: a JSON path or builtin:NAME.
  std::vector<std::string> inputs;

  std::vector<std::string> checks;  // gaussian; empty means all
  std::optional<Vector> x;          // translate, kl
  std::optional<Vector> y;          // translate
  std::optional<std::int64_t> start_index;
  std::optional<Vector> start_vector;
  std::int64_t horizon = 2;
  std::int64_t paths = 1000;
  bool bruteforce = false;
  std::int64_t n_max = 64;
  bool rescale = false;
};

/// Strict: unknown keys, wrong types and out-of-range values are ConfigErrors.
ExperimentConfig config_from_json(const io::Json& j);
io::Json config_to_json(const ExperimentConfig& c);

/// Range checks that do not depend on the input files.
void validate(const ExperimentConfig& c);

/// An inline JSON array ("[1, 0.5]") or a path to a file holding one.
Vector vector_argument(const std::string& text, std::string_view field);

}  // namespace pframes::cli
