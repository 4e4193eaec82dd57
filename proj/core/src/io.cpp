#include "pframes/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "pframes/error.hpp"

namespace pframes::io {
namespace {

[[noreturn]] void fail(std::string_view field, const std::string& why) {
  throw Error(Errc::ConfigError, "field '" + std::string(field) + "': " + why);
}

void require_keys(const Json& j, std::string_view what, std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required) {
  if (!j.is_object()) fail(what, "expected a JSON object");
  const std::set<std::string_view> ok(allowed);
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) fail(key, "unknown key in " + std::string(what));
  }
  for (const auto key : required) {
    if (!j.contains(std::string(key))) fail(key, "missing from " + std::string(what));
  }
}

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json frame_to_json(const Frame& frame) {
  return {{"dim", frame.dim()}, {"vectors", to_json(Matrix(frame.vectors().transpose()))}};
}

Json measure_to_json(const DiscreteMeasure& mu) {
  return {{"dim", mu.dim()},
          {"atoms", to_json(Matrix(mu.atoms().transpose()))},
          {"weights", to_json(mu.weights())}};
}

Json kernel_to_json(const DppKernel& kernel) { return {{"k", to_json(kernel.matrix())}}; }

Vector vector_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(field, "entry " + std::to_string(i) + " is not a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from_json(j[r], std::string(field) + "[" + std::to_string(r) + "]");
    if (static_cast<std::size_t>(row.size()) != cols) fail(field, "row " + std::to_string(r) + " has the wrong length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Frame frame_from_json(const Json& j) {
  require_keys(j, "frame", {"schema", "dim", "vectors"}, {"dim", "vectors"});
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) fail("dim", "expected a positive integer");
  const auto dim = j["dim"].get<Eigen::Index>();
  const Matrix rows = matrix_from_json(j["vectors"], "vectors");
  if (rows.cols() != dim) fail("vectors", "vector length differs from dim = " + std::to_string(dim));
  try {
    return Frame::from_columns(rows.transpose());
  } catch (const Error& e) {
    fail("vectors", e.what());
  }
}

DiscreteMeasure measure_from_json(const Json& j) {
  require_keys(j, "measure", {"schema", "dim", "atoms", "weights"}, {"dim", "atoms", "weights"});
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) fail("dim", "expected a positive integer");
  const auto dim = j["dim"].get<Eigen::Index>();
  const Matrix rows = matrix_from_json(j["atoms"], "atoms");
  if (rows.cols() != dim) fail("atoms", "atom length differs from dim = " + std::to_string(dim));
  const Vector w = vector_from_json(j["weights"], "weights");
  std::vector<Vector> atoms;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) atoms.emplace_back(rows.row(r).transpose());
  try {
    return DiscreteMeasure(atoms, std::vector<double>(w.data(), w.data() + w.size()));
  } catch (const Error& e) {
    fail("weights", e.what());
  }
}

DppKernel kernel_from_json(const Json& j) {
  require_keys(j, "kernel", {"schema", "k"}, {"k"});
  try {
    return DppKernel::from_matrix(matrix_from_json(j["k"], "k"));
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    fail("k", e.what());
  }
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(Errc::ConfigError, std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                       ": malformed JSON (byte " + std::to_string(e.byte) + "): " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

}  // namespace pframes::io
