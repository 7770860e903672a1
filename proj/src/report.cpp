#include "primelab/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "primelab/errors.hpp"

namespace primelab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ExperimentReport::param(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params)
    if (k == key) {
      v = value;
      return;
    }
  params.emplace_back(key, value);
}

void ExperimentReport::param(const std::string& key, double value) { param(key, format_number(value)); }

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw DomainError("report row has " + std::to_string(row.size()) + " values for " +
                      std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

void ExperimentReport::set_fit(const std::string& key, double value) {
  for (auto& [k, v] : fit)
    if (k == key) {
      v = value;
      return;
    }
  fit.emplace_back(key, value);
}

void ExperimentReport::set_verdict(const std::string& key, bool pass) {
  for (auto& [k, v] : verdicts)
    if (k == key) {
      v = pass;
      return;
    }
  verdicts.emplace_back(key, pass);
}

std::optional<double> ExperimentReport::fit_value(const std::string& key) const {
  for (const auto& [k, v] : fit)
    if (k == key) return v;
  return std::nullopt;
}

std::optional<bool> ExperimentReport::verdict(const std::string& key) const {
  for (const auto& [k, v] : verdicts)
    if (k == key) return v;
  return std::nullopt;
}

bool ExperimentReport::pass() const {
  for (const auto& [k, v] : verdicts)
    if (!v) return false;
  for (const auto& part : parts)
    if (!part.pass()) return false;
  return true;
}

ExperimentReport& ExperimentReport::add_part(ExperimentReport part) {
  parts.push_back(std::move(part));
  return parts.back();
}

std::vector<std::pair<std::string, bool>> ExperimentReport::all_verdicts() const {
  std::vector<std::pair<std::string, bool>> out(verdicts.begin(), verdicts.end());
  for (const auto& part : parts)
    for (auto& [k, v] : part.all_verdicts()) out.emplace_back(part.suite + "." + k, v);
  return out;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

}  // namespace

namespace {

nlohmann::ordered_json to_tree(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["config_hash"] = r.config_hash;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["columns"] = r.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    auto a = nlohmann::ordered_json::array();
    for (double x : row) a.push_back(number(x));
    j["rows"].push_back(std::move(a));
  }
  j["fit"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.fit) j["fit"][k] = number(v);
  j["verdict"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.verdicts) j["verdict"][k] = v;
  j["verdict"]["all"] = r.pass();
  j["notes"] = r.notes;
  if (!r.parts.empty()) {
    j["parts"] = nlohmann::ordered_json::array();
    for (const auto& p : r.parts) j["parts"].push_back(to_tree(p));
  }
  if (r.wall_time) j["wall_time"] = *r.wall_time;
  return j;
}

}  // namespace

std::string ExperimentReport::to_json() const { return to_tree(*this).dump(2) + "\n"; }

}  // namespace primelab
