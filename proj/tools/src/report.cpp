#include "pframes_cli/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pframes/error.hpp"

namespace pframes::cli {
namespace {

using io::Json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw Error(Errc::ConfigError, "csv line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error(Errc::ConfigError, "csv line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  return v;
}

// JSON has no inf or nan; those become strings so the report stays valid.
Json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

bool Report::pass() const noexcept {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

Checks Checks::nested(std::string_view name) const {
  return Checks(out_, tol_, prefix_.empty() ? std::string(name) : prefix_ + "." + std::string(name));
}

void Checks::push(std::string_view name, double value, double target, double se, double z, bool pass,
                  std::string rule) {
  out_.push_back({prefix_.empty() ? std::string(name) : prefix_ + "." + std::string(name), value, target, se, z, pass,
                  std::move(rule)});
}

void Checks::mc(std::string_view name, const McEstimate& e) {
  push(name, e.value, e.target, e.std_error, e.z_score, e.within(tol_.z_max), "|z|<=" + format_double(tol_.z_max));
}

void Checks::near(std::string_view name, double value, double target, double tol) {
  const bool ok = std::abs(value - target) <= tol * std::max(1.0, std::abs(target));
  push(name, value, target, 0.0, 0.0, ok, "|d|<=" + format_double(tol));
}

void Checks::at_most(std::string_view name, double value, double bound) {
  push(name, value, bound, 0.0, 0.0, value <= bound, "<=");
}

void Checks::at_least(std::string_view name, double value, double bound) {
  push(name, value, bound, 0.0, 0.0, value >= bound, ">=");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Json report_to_json(const Report& r) {
  Json records = Json::array();
  for (const auto& c : r.records) {
    records.push_back({{"name", c.name},
                       {"value", number_json(c.value)},
                       {"target", number_json(c.target)},
                       {"std_error", number_json(c.std_error)},
                       {"z_score", number_json(c.z_score)},
                       {"pass", c.pass},
                       {"rule", c.rule}});
  }
  return {{"schema", 1},
          {"command", std::string(command_name(r.command))},
          {"config", r.config},
          {"records", records},
          {"pass", r.pass()},
          {"warnings", r.warnings},
          {"payload", r.payload},
          {"duration_seconds", r.duration_seconds}};
}

std::string records_csv(const std::vector<CheckRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& c : records) {
    out += csv_field(c.name) + ',' + format_double(c.value) + ',' + format_double(c.target) + ',' +
           format_double(c.std_error) + ',' + format_double(c.z_score) + ',' + (c.pass ? "true" : "false") + '\n';
  }
  return out;
}

void emit_csv(const Report& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << records_csv(r.records);
  if (!out.flush()) throw Error(Errc::IoError, "write failed for " + path.string());
}

std::vector<CheckRecord> parse_records_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw Error(Errc::ConfigError, "csv line 1: expected header '" + std::string(kCsvHeader) + "'");
  std::vector<CheckRecord> out;
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 6) throw Error(Errc::ConfigError, "csv line " + std::to_string(line_no) + ": expected 6 fields");
    if (f[5] != "true" && f[5] != "false")
      throw Error(Errc::ConfigError, "csv line " + std::to_string(line_no) + ": pass must be true or false");
    out.push_back({f[0], parse_number(f[1], line_no), parse_number(f[2], line_no), parse_number(f[3], line_no),
                   parse_number(f[4], line_no), f[5] == "true", {}});
  }
  return out;
}

std::string table_csv(const Table& t) {
  std::string out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
    out += '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out;
}

}  // namespace pframes::cli
