#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primelab/operators.hpp"
#include "primelab/quadrature.hpp"

namespace primelab::cli {

enum class ValueKind { Integer, Real, Text, RealList, Boolean };

struct KeySpec {
  std::string name;
  ValueKind kind;
  std::string default_value;
  std::string help;
};

// Every recognised `section.key`, sorted by name.
const std::vector<KeySpec>& key_registry();

// Flat `section.key = value` configuration with defaults filled in.
//   - '#' starts a comment, blank lines are ignored
//   - unknown keys, duplicate keys and ill-typed values are ConfigErrors
//     carrying the line number
class Config {
 public:
  Config();  // all defaults

  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value, std::size_t line = 0);
  bool is_default(const std::string& key) const;

  std::int64_t integer(const std::string& key) const;
  double real(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  bool boolean(const std::string& key) const;

  // `key = value` per line in key order, every key resolved.
  std::string canonical() const;
  // Git blob SHA-1 of canonical().
  std::string hash() const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> explicit_;
};

// Git-style content hash: SHA-1 over "blob <size>\0" + content, hex encoded.
std::string git_blob_sha1(std::string_view content);

ops::OperatorConfig operator_config(const Config& c);
ops::TimeGrid time_grid(const Config& c);
quad::Options quad_options(const Config& c);
std::uint64_t seed(const Config& c);

}  // namespace primelab::cli
