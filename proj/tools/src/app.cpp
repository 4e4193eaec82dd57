#include "pframes_cli/app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "pframes/error.hpp"
#include "pframes_cli/commands.hpp"

namespace pframes::cli {
namespace {

struct RawFlags {
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::int64_t dim = 0;
  std::string out;
  std::string format = "json";
  std::string config;
  std::string table;
  std::vector<std::string> inputs;
  std::vector<std::string> checks;
  std::string x, y, start_vector;
  std::int64_t start_index = 0;
  std::int64_t horizon = 0;
  std::int64_t paths = 0;
  std::int64_t n_max = 0;
  bool bruteforce = false;
  bool rescale = false;
};

void write_text(const std::string& path, const std::string& body, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << body) || !f.flush()) throw Error(Errc::IoError, "cannot write " + path);
}

ExperimentConfig base_config(const RawFlags& raw, Command command) {
  if (raw.config.empty()) {
    ExperimentConfig c;
    c.command = command;
    return c;
  }
  const io::Json j = io::read_json_file(raw.config);
  ExperimentConfig c = config_from_json(j);
  if (j.contains("command") && c.command != command)
    throw Error(Errc::ConfigError, raw.config + ": config is for '" + std::string(command_name(c.command)) +
                                       "' but the command line asks for '" + std::string(command_name(command)) + "'");
  c.command = command;
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of probabilistic frames, determinantal processes and Gaussian measures",
               "pframes"};
  app.require_subcommand(1);
  app.fallthrough();

  RawFlags raw;
  std::map<std::string, CLI::Option*> opts;
  opts["seed"] = app.add_option("--seed", raw.seed, "Master seed (default 7)");
  opts["samples"] = app.add_option("--samples", raw.samples, "Samples M per Monte Carlo check (default 100000)");
  opts["dim"] = app.add_option("--dim", raw.dim, "White-noise truncation D (default 32)");
  app.add_option("--out", raw.out, "Report path; stdout when absent");
  app.add_option("--format", raw.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", raw.config, "JSON experiment config; flags override its fields");
  app.add_option("--table", raw.table, "CSV path for tabular output (paths, draws, coupling, decay sequence)");

  std::map<Command, CLI::App*> subs;
  const auto sub = [&](Command c, std::string help) {
    auto* s = app.add_subcommand(std::string(command_name(c)), std::move(help));
    subs[c] = s;
    return s;
  };

  sub(Command::Frames, "Frame bounds, sandwich inequality and canonical dual")
      ->add_option("frame", raw.inputs, "Frame JSON or builtin:NAME (default builtin:mercedes-benz)")
      ->expected(0, 1);
  sub(Command::Wasserstein, "Exact W2 distance between two discrete measures")
      ->add_option("measures", raw.inputs, "Two measure JSON files")
      ->expected(2)
      ->required();
  auto* decay = sub(Command::Decay, "Lower-bound decay sequence f(n) of a discrete measure");
  decay->add_option("measure", raw.inputs, "Measure JSON file")->expected(1)->required();
  opts["n_max"] = decay->add_option("--n-max", raw.n_max, "Embedding length (default 64)");

  auto* markov = sub(Command::Markov, "Frame Markov chain: transition matrix and sampled paths");
  markov->add_option("frame", raw.inputs, "Frame JSON or builtin:NAME (default builtin:mercedes-benz)")->expected(0, 1);
  opts["start_index"] = markov->add_option("--start-index", raw.start_index, "Start at frame vector i (default 0)");
  opts["start_vector"] = markov->add_option("--start-vector", raw.start_vector, "Start vector, inline JSON or file");
  opts["horizon"] = markov->add_option("--horizon", raw.horizon, "Path length k (default 2)");
  opts["paths"] = markov->add_option("--paths", raw.paths, "Number of sampled paths m (default 1000)");
  opts["start_index"]->excludes(opts["start_vector"]);

  auto* dpp = sub(Command::Dpp, "Determinantal process sampling against exact probabilities");
  dpp->add_option("source", raw.inputs, "Kernel or frame JSON, or builtin:NAME (default builtin:mercedes-benz)")
      ->expected(0, 1);
  opts["bruteforce"] = dpp->add_flag("--bruteforce", raw.bruteforce, "Compare with the exact subset table");

  sub(Command::Gaussian, "White-noise Monte Carlo checks")
      ->add_option("--checks", raw.checks, "Comma list of isometry,charfn,moments,covariance,reconstruct,projection")
      ->delimiter(',');
  opts["checks"] = subs[Command::Gaussian]->get_option("--checks");

  auto* translate = sub(Command::Translate, "Translated measures and the exponential functional");
  opts["x"] = translate->add_option("--x", raw.x, "Translation x, inline JSON or file (default [1])");
  opts["y"] = translate->add_option("--y", raw.y, "Probe y, inline JSON or file (default [1])");

  auto* kl = sub(Command::Kl, "Karhunen-Loeve expansion over a Parseval frame");
  kl->add_option("frame", raw.inputs, "Frame JSON or builtin:NAME (default builtin:mercedes-benz-parseval)")
      ->expected(0, 1);
  opts["kl_x"] = kl->add_option("--x", raw.x, "Vector x, inline JSON or file (default e1)");
  opts["rescale"] = kl->add_flag("--rescale", raw.rescale, "Divide a tight frame by sqrt(beta) first");

  sub(Command::VerifyAll, "Every suite at the given seed, samples and dim");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  Command command = Command::VerifyAll;
  for (const auto& [c, s] : subs)
    if (s->parsed()) command = c;

  const auto given = [&](const char* key) { return opts.contains(key) && opts[key]->count() > 0; };
  try {
    ExperimentConfig c = base_config(raw, command);
    if (given("seed")) c.seed = raw.seed;
    if (given("samples")) c.samples = raw.samples;
    if (given("dim")) c.dim = raw.dim;
    if (given("n_max")) c.n_max = raw.n_max;
    if (given("horizon")) c.horizon = raw.horizon;
    if (given("paths")) c.paths = raw.paths;
    if (given("bruteforce")) c.bruteforce = true;
    if (given("rescale")) c.rescale = true;
    if (given("checks")) c.checks = raw.checks;
    if (given("start_index")) {
      c.start_index = raw.start_index;
      c.start_vector.reset();
    }
    if (given("start_vector")) {
      c.start_vector = vector_argument(raw.start_vector, "start_vector");
      c.start_index.reset();
    }
    if (given("x") || given("kl_x")) c.x = vector_argument(raw.x, "x");
    if (given("y")) c.y = vector_argument(raw.y, "y");
    if (!raw.inputs.empty()) c.inputs = raw.inputs;

    const auto start = std::chrono::steady_clock::now();
    Report report = run(c, RunOptions{.table = !raw.table.empty()});
    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& w : report.warnings) err << "pframes: warning: " << w << '\n';
    const std::string body = raw.format == "csv" ? records_csv(report.records) : report_to_json(report).dump(2) + "\n";
    write_text(raw.out, body, out);
    if (!raw.table.empty()) {
      if (report.table)
        write_text(raw.table, table_csv(*report.table), out);
      else
        err << "pframes: warning: " << command_name(command) << " produces no table\n";
    }

    std::size_t failed = 0;
    for (const auto& r : report.records) failed += r.pass ? 0 : 1;
    err << "pframes " << command_name(command) << ": " << (failed == 0 ? "PASS" : "FAIL") << " ("
        << report.records.size() - failed << "/" << report.records.size() << " checks)\n";
    return failed == 0 ? kPass : kCheckFailure;
  } catch (const Error& e) {
    err << "pframes: " << e.what() << '\n';
    return e.code() == Errc::SolverFailure ? kInternalError : kConfigError;
  } catch (const std::exception& e) {
    err << "pframes: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace pframes::cli
