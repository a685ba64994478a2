#pragma once

// Job description, dispatch and output formatting for the krf command line.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krf/cartan.hpp"
#include "krf/modes.hpp"
#include "krf/numeric.hpp"

namespace krf::cli {

inline constexpr int kSchemaVersion = 1;

enum class ExitCode : int { ok = 0, check_failed = 2, invalid_input = 3 };

enum class OutputFormat { json, csv };

struct JobSpec {
  std::string algebra;
  /// qsys | mult | char | sce | verify
  std::string command;
  /// "count" for sce; "genseries" or "all" for verify.
  std::string subcommand;
  ModeMap nu;
  std::optional<ModeMap> pattern;
  int level = 2;
  int degree = 3;
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 1;
  Integer max_det = 1000000;
  bool all_weights = false;
  std::optional<Weight> weight;
  bool check = false;

  /// Throws std::invalid_argument on missing or out-of-range fields.
  void validate() const;
};

/// Reads {"algebra", "command", "subcommand", "nu": [{a, m, mult}], "pattern",
/// "level", "degree", "format", "seed", "max_det", "all_weights", "weight", "check"}.
/// Throws std::invalid_argument on schema violations.
JobSpec job_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const JobSpec& job);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct JobResult {
  ExitCode exit = ExitCode::ok;
  nlohmann::json document;
  Table table;
};

/// Runs a validated job. Throws std::invalid_argument for inputs the
/// computation rejects (for example a non-classical algebra for `char`).
JobResult run_job(const JobSpec& job);

void write_result(const JobResult& result, OutputFormat format, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace krf::cli
