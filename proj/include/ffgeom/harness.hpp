#pragma once

#include "ffgeom/exact.hpp"
#include "ffgeom/lemma_verifier.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffgeom {

/// Malformed experiment configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter lists for one batch run. Every list-valued key contributes one
/// axis of the Cartesian product of cases.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::vector<Rational>> rationals;
  std::map<std::string, std::vector<std::int64_t>> integers;
  std::map<std::string, std::vector<std::string>> labels;
  std::vector<std::pair<int, int>> dims;
  std::optional<ExactExponent> expected;
  bool negative_control = false;

  std::string out_dir = ".";
  unsigned jobs = 1;
  Rational grid_step{1, 4};
  Rational upper_constant{16};
  Rational lower_constant{1, 25};
};

/// Parses a JSON document. Rationals may be JSON integers or strings "n" /
/// "n/d"; anything else raises ConfigError("... rationals must be num/den").
/// Every entry of "p" must be prime.
ExperimentConfig parse_config(std::string_view text);

/// Strict rational parse used for CLI flags; throws ConfigError.
Rational parse_rational_arg(std::string_view text, std::string_view key);

struct ReportRow {
  std::vector<std::string> cells;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::vector<std::string> header;
  std::vector<ReportRow> rows;
  std::vector<CounterexampleReport> counterexamples;
  std::int64_t wall_ms = 0;

  std::size_t passes() const;
  std::size_t fails() const { return rows.size() - passes(); }
};

/// CSV column sets per command, as listed in the CLI help.
std::vector<std::string> csv_header(const std::string& command);

/// Runs every case of the configuration. Per-case errors become failing rows.
RunReport run(const ExperimentConfig& config);

/// Writes <out>/<command>.csv, <out>/summary.json and, for lemmas,
/// <out>/counterexamples.csv.
void write_report(const RunReport& report, const std::string& out_dir);

std::string to_csv(const RunReport& report);
std::string summary_json(const RunReport& report);

}  // namespace ffgeom
