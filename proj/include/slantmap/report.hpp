#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slantmap/descriptors.hpp"
#include "slantmap/sweep.hpp"

namespace slantmap {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string command = "gallery";
  std::vector<std::string> inputs;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTolerances.inequality;
  bool tol_set = false;  // --tol given; also overrides identity tolerances
  OutputFormat format = OutputFormat::Text;
  std::uint64_t n = 0;
  std::string fixture;
};

const std::vector<std::string>& known_commands();

struct CheckRecord {
  std::string id;
  std::string kind;  // structure | identity | regression | inequality | classification | sweep
  std::string subject;
  bool pass = false;
  bool informational = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::vector<NamedValue> values;
  std::string message;

  bool operator==(const CheckRecord& o) const;
};

struct Provenance {
  std::string command;
  std::vector<std::string> fixtures;
  std::uint64_t seed = 0;
  double tol = 0.0;

  bool operator==(const Provenance& o) const = default;
};

struct RunReport {
  Provenance provenance;
  std::vector<CheckRecord> checks;
  std::vector<Finding> findings;

  int pass_count() const;
  int fail_count() const;
  /// 0 when nothing failed and nothing was found, 1 otherwise.
  int exit_code() const;

  void add(CheckRecord rec) { checks.push_back(std::move(rec)); }
  bool operator==(const RunReport& o) const;
};

/// value <= tolerance
CheckRecord residual_check(std::string id, std::string subject, double residual, double tolerance);
/// |value - expected| <= tolerance
CheckRecord regression_check(std::string id, std::string subject, double value, double expected, double tolerance);
CheckRecord inequality_check(const std::string& subject, const InequalityReport& rep, double tol);

Json report_to_json(const RunReport& report);
RunReport report_from_json(const Json& j);

/// Stable line-oriented text: one line per check, then findings, then a summary line.
std::string report_to_text(const RunReport& report);

/// Writes the report to out; IoFailure when the stream fails.
void emit_report(const RunReport& report, OutputFormat format, std::ostream& out);

}  // namespace slantmap
