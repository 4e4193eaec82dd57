#pragma once

// JSON documents for frames, measures and kernels:
//   frame:   { "dim": N, "vectors": [[...], ...] }
//   measure: { "dim": N, "atoms": [[...], ...], "weights": [...] }
//   kernel:  { "k": [[...], ...] }
// Readers re-validate every invariant and reject unknown keys.

#include <filesystem>
#include <string_view>
#include <nlohmann/json.hpp>

#include "pframes/dpp.hpp"
#include "pframes/frame.hpp"
#include "pframes/measure.hpp"

namespace pframes::io {

using Json = nlohmann::json;

Json to_json(const Vector& v);
Json to_json(const Matrix& m);  // row-major nested arrays
Json frame_to_json(const Frame& frame);
Json measure_to_json(const DiscreteMeasure& mu);
Json kernel_to_json(const DppKernel& kernel);

/// Throws ConfigError with the offending field named.
Vector vector_from_json(const Json& j, std::string_view field);
Matrix matrix_from_json(const Json& j, std::string_view field);
Frame frame_from_json(const Json& j);
DiscreteMeasure measure_from_json(const Json& j);
DppKernel kernel_from_json(const Json& j);

/// ConfigError on malformed text, located as source:line:column.
Json parse_json_text(std::string_view text, std::string_view source);

/// IoError if the file cannot be read.
Json read_json_file(const std::filesystem::path& path);

}  // namespace pframes::io
