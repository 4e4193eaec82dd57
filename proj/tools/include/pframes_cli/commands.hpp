#pragma once

#include <string>

#include "pframes/dpp.hpp"
#include "pframes/frame.hpp"
#include "pframes/measure.hpp"
#include "pframes_cli/config.hpp"
#include "pframes_cli/report.hpp"

namespace pframes::cli {

struct RunOptions {
  bool table = false;  // build the tabular side output
};

/// Dispatches to the owning module. Module errors propagate with the command
/// name prepended to the message; duration_seconds is left for the caller.
Report run(const ExperimentConfig& config, const RunOptions& options = {});

/// A JSON path or one of builtin:onbN, builtin:mercedes-benz, builtin:mercedes-benz-parseval.
Frame load_frame(const std::string& source);
DiscreteMeasure load_measure(const std::string& source);
/// Kernel JSON ({"k": ...}) as is, or a frame source turned into G / beta.
DppKernel load_kernel(const std::string& source);

}  // namespace pframes::cli
