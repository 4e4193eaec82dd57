#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pframes/gaussian.hpp"
#include "pframes/io.hpp"
#include "pframes_cli/config.hpp"

namespace pframes::cli {

/// One pass/fail check. Deterministic checks carry std_error = z_score = 0.
struct CheckRecord {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  bool pass = false;
  std::string rule;  // e.g. "|z|<=4", "<=", "|d|<=1e-12"; JSON only
};

/// Tabular side output (paths, draws, coupling, decay sequence).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  Command command = Command::VerifyAll;
  io::Json config = io::Json::object();
  std::vector<CheckRecord> records;
  io::Json payload = io::Json::object();
  std::vector<std::string> warnings;
  std::optional<Table> table;
  double duration_seconds = 0.0;

  bool pass() const noexcept;
};

/// Appends records under a name prefix using the configured thresholds.
class Checks {
 public:
  Checks(std::vector<CheckRecord>& out, const Tolerances& tol, std::string prefix = {})
      : out_(out), tol_(tol), prefix_(std::move(prefix)) {}

  Checks nested(std::string_view name) const;
  const Tolerances& tolerances() const noexcept { return tol_; }

  /// |z| <= z_max.
  void mc(std::string_view name, const McEstimate& e);
  /// |value - target| <= tol * max(1, |target|).
  void near(std::string_view name, double value, double target, double tol);
  void exact(std::string_view name, double value, double target) { near(name, value, target, tol_.exact); }
  void at_most(std::string_view name, double value, double bound);
  void at_least(std::string_view name, double value, double bound);

 private:
  void push(std::string_view name, double value, double target, double se, double z, bool pass, std::string rule);

  std::vector<CheckRecord>& out_;
  Tolerances tol_;
  std::string prefix_;
};

/// Shortest text that parses back to the same double, at most 17 digits.
std::string format_double(double v);

io::Json report_to_json(const Report& r);

inline constexpr std::string_view kCsvHeader = "name,value,target,std_error,z_score,pass";

std::string records_csv(const std::vector<CheckRecord>& records);
/// IoError if the file cannot be written.
void emit_csv(const Report& r, const std::filesystem::path& path);
/// Inverse of records_csv; ConfigError on a malformed document. The rule field is not stored.
std::vector<CheckRecord> parse_records_csv(std::string_view text);

std::string table_csv(const Table& t);

}  // namespace pframes::cli
