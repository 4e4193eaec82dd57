#include "pframes_cli/config.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "pframes/error.hpp"

namespace pframes::cli {
namespace {

using io::Json;

constexpr std::array<std::pair<Command, std::string_view>, 9> kNames{{
    {Command::Frames, "frames"},
    {Command::Wasserstein, "wasserstein"},
    {Command::Decay, "decay"},
    {Command::Markov, "markov"},
    {Command::Dpp, "dpp"},
    {Command::Gaussian, "gaussian"},
    {Command::Translate, "translate"},
    {Command::Kl, "kl"},
    {Command::VerifyAll, "verify-all"},
}};

[[noreturn]] void fail(std::string_view field, const std::string& why) {
  throw Error(Errc::ConfigError, "config field '" + std::string(field) + "': " + why);
}

std::int64_t get_int(const Json& j, std::string_view field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<std::int64_t>();
}

double get_double(const Json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

bool get_bool(const Json& j, std::string_view field) {
  if (!j.is_boolean()) fail(field, "expected true or false");
  return j.get<bool>();
}

std::vector<std::string> get_strings(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) fail(field, "expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Tolerances tolerances_from_json(const Json& j) {
  if (!j.is_object()) fail("tolerances", "expected an object");
  Tolerances t;
  for (const auto& [key, value] : j.items()) {
    const std::string field = "tolerances." + key;
    const double v = get_double(value, field);
    if (!(v > 0.0)) fail(field, "must be positive");
    if (key == "z_max") t.z_max = v;
    else if (key == "exact") t.exact = v;
    else if (key == "bound") t.bound = v;
    else if (key == "table") t.table = v;
    else if (key == "tv_max") t.tv_max = v;
    else if (key == "p_min") t.p_min = v;
    else fail(field, "unknown tolerance");
  }
  return t;
}

}  // namespace

std::string_view command_name(Command c) noexcept {
  for (const auto& [cmd, name] : kNames)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kNames)
    if (n == name) return cmd;
  fail("command", "unknown command '" + std::string(name) + "'");
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& [cmd, n] : kNames) v.push_back(n);
    return v;
  }();
  return names;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema") {
      if (get_int(value, key) != 1) fail(key, "only schema 1 is understood");
    } else if (key == "command") {
      if (!value.is_string()) fail(key, "expected a string");
      c.command = parse_command(value.get<std::string>());
    } else if (key == "seed") {
      const auto s = get_int(value, key);
      if (s < 0) fail(key, "must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "samples") {
      c.samples = get_int(value, key);
    } else if (key == "dim") {
      c.dim = get_int(value, key);
    } else if (key == "tolerances") {
      c.tolerances = tolerances_from_json(value);
    } else if (key == "inputs") {
      c.inputs = get_strings(value, key);
    } else if (key == "checks") {
      c.checks = get_strings(value, key);
    } else if (key == "x") {
      c.x = io::vector_from_json(value, "x");
    } else if (key == "y") {
      c.y = io::vector_from_json(value, "y");
    } else if (key == "start_index") {
      c.start_index = get_int(value, key);
    } else if (key == "start_vector") {
      c.start_vector = io::vector_from_json(value, "start_vector");
    } else if (key == "horizon") {
      c.horizon = get_int(value, key);
    } else if (key == "paths") {
      c.paths = get_int(value, key);
    } else if (key == "bruteforce") {
      c.bruteforce = get_bool(value, key);
    } else if (key == "n_max") {
      c.n_max = get_int(value, key);
    } else if (key == "rescale") {
      c.rescale = get_bool(value, key);
    } else {
      fail(key, "unknown key");
    }
  }
  validate(c);
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j{{"schema", 1},
         {"command", std::string(command_name(c.command))},
         {"seed", c.seed},
         {"samples", c.samples},
         {"dim", c.dim},
         {"tolerances",
          {{"z_max", c.tolerances.z_max},
           {"exact", c.tolerances.exact},
           {"bound", c.tolerances.bound},
           {"table", c.tolerances.table},
           {"tv_max", c.tolerances.tv_max},
           {"p_min", c.tolerances.p_min}}},
         {"inputs", c.inputs},
         {"checks", c.checks},
         {"horizon", c.horizon},
         {"paths", c.paths},
         {"bruteforce", c.bruteforce},
         {"n_max", c.n_max},
         {"rescale", c.rescale}};
  if (c.x) j["x"] = io::to_json(*c.x);
  if (c.y) j["y"] = io::to_json(*c.y);
  if (c.start_index) j["start_index"] = *c.start_index;
  if (c.start_vector) j["start_vector"] = io::to_json(*c.start_vector);
  return j;
}

void validate(const ExperimentConfig& c) {
  if (c.samples < 2) fail("samples", "must be at least 2");
  if (c.dim < 1) fail("dim", "must be positive");
  if (c.horizon < 1) fail("horizon", "must be positive");
  if (c.paths < 1) fail("paths", "must be positive");
  if (c.n_max < 1) fail("n_max", "must be positive");
  if (c.start_index && *c.start_index < 0) fail("start_index", "must be nonnegative");
  if (c.start_index && c.start_vector) fail("start_vector", "give start_index or start_vector, not both");
  for (const auto& name : c.checks) {
    if (std::find(std::begin(kGaussianChecks), std::end(kGaussianChecks), name) == std::end(kGaussianChecks))
      fail("checks", "unknown check '" + name + "'");
  }
  for (const auto* v : {&c.x, &c.y, &c.start_vector}) {
    if (*v && !v->value().allFinite()) fail("vector", "entries must be finite");
  }
}

Vector vector_argument(const std::string& text, std::string_view field) {
  const auto first = text.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && text[first] == '[';
  const Json j = inline_json ? io::parse_json_text(text, field) : io::read_json_file(text);
  return io::vector_from_json(j, field);
}

}  // namespace pframes::cli
