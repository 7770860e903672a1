#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace primelab {

// Rows of named numeric columns plus fitted parameters and verdicts. A verdict
// is always derivable from the rows and the recorded tolerances.
struct ExperimentReport {
  std::string suite;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> fit;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::vector<std::string> notes;
  std::optional<double> wall_time;
  // Sub-reports of composite suites; pass() and to_json() include them.
  std::vector<ExperimentReport> parts;

  ExperimentReport() = default;
  ExperimentReport(std::string suite_name, std::vector<std::string> column_names)
      : suite(std::move(suite_name)), columns(std::move(column_names)) {}

  void param(const std::string& key, const std::string& value);
  void param(const std::string& key, double value);
  void add_row(std::vector<double> row);
  void set_fit(const std::string& key, double value);
  void set_verdict(const std::string& key, bool pass);
  void note(std::string text) { notes.push_back(std::move(text)); }

  std::optional<double> fit_value(const std::string& key) const;
  std::optional<bool> verdict(const std::string& key) const;
  // True iff every verdict, including those of the parts, passes.
  bool pass() const;

  // Header row, 17 significant digits, '.' decimal, LF endings.
  std::string to_csv() const;
  // {"suite", "config_hash", "params", "columns", "rows", "fit", "verdict",
  //  "notes"[, "parts"][, "wall_time"]}.
  std::string to_json() const;

  ExperimentReport& add_part(ExperimentReport part);
  // (qualified name, pass) for every verdict, parts included as "part.key".
  std::vector<std::pair<std::string, bool>> all_verdicts() const;
};

// "%.17g" formatting with nan/inf spelled out.
std::string format_number(double x);

}  // namespace primelab
