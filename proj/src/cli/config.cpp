#include "primelab/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "primelab/errors.hpp"
#include "primelab/kernel.hpp"
#include "primelab/poly.hpp"
#include "primelab/region.hpp"

namespace primelab::cli {

namespace {

std::vector<KeySpec> build_registry() {
  using K = ValueKind;
  std::vector<KeySpec> r = {
      {"run.seed", K::Integer, "20240601", "seed for every random input"},
      {"run.threads", K::Integer, "1", "worker threads"},
      {"output.timing", K::Boolean, "false", "record wall time in the JSON report"},

      {"operator.polynomial", K::Text, "n^2", "components separated by ';'"},
      {"operator.k_int", K::Integer, "1", "k', integer variables"},
      {"operator.k_prime", K::Integer, "0", "k'', prime variables"},
      {"operator.region", K::Text, "ball", "ball | box | ellipsoid | half_spaces"},
      {"operator.region_params", K::Text, "", "ellipsoid: semi-axes; half_spaces: 'n_1 .. n_k b | ...'"},
      {"operator.kernel", K::Text, "none", "none | hilbert | riesz_<j> | odd_homogeneous | even_control"},

      {"grid.kind", K::Text, "dyadic", "dyadic | subexponential | explicit"},
      {"grid.count", K::Integer, "6", "dyadic count or n_max"},
      {"grid.tau", K::Real, "0.5", "exponent in N_n = floor(2^{n^tau})"},
      {"grid.values", K::RealList, "", "explicit times"},

      {"functions.count", K::Integer, "4", "random lattice functions per check"},
      {"functions.radius", K::Integer, "5", "support box [-R, R]^d"},
      {"functions.p", K::Real, "2", "exponent of the l^p norms"},

      {"seminorms.exhaustive_length", K::Integer, "8", "all {-1,0,1} paths up to this length"},
      {"seminorms.paths", K::Integer, "10000", "random paths"},
      {"seminorms.length", K::Integer, "12", "random path length"},
      {"seminorms.lambda", K::Real, "0.5", "jump size for random paths"},
      {"seminorms.rm_sequences", K::Integer, "1000", "Rademacher-Menshov sequences per m"},
      {"seminorms.rm_m_max", K::Integer, "8", "largest m"},

      {"sweep.draws", K::Integer, "20", "coefficient draws"},
      {"sweep.degree", K::Integer, "2", "degree of the random polynomial"},
      {"sweep.coef_max", K::Integer, "5", "coefficients in [-c, c]"},
      {"sweep.functions", K::Integer, "8", "random f_i per draw"},
      {"sweep.radius", K::Integer, "20", "f_i supported in [-R, R]"},
      {"sweep.grid_count", K::Integer, "10", "dyadic times 2..2^count"},
      {"sweep.spread_max", K::Real, "10", "allowed max/min ratio"},

      {"gauss.q_max", K::Integer, "200", "largest denominator"},
      {"gauss.delta_min", K::Real, "0.4", "required fitted decay"},

      {"weyl.N", K::RealList, "100,300,1000,3000,10000", "scales"},
      {"weyl.arcs", K::Text, "fibonacci", "fibonacci or 'a/q, ...' (one or one per N)"},
      {"weyl.offset", K::Real, "0", "added to a/q"},
      {"weyl.beta", K::Real, "2", "minor-arc window exponent"},
      {"weyl.coordinate", K::Integer, "0", "coordinate carrying a/q"},

      {"multiplier.t", K::RealList, "1,2,5,10,50", "scales for the multiplier grid"},
      {"multiplier.points", K::Integer, "200", "frequencies per scale"},
      {"multiplier.tol", K::Real, "1e-8", "closed-form comparison tolerance"},
      {"multiplier.continuous_points", K::Integer, "20", "frequencies per scale for the continuous side"},

      {"approx.a", K::Integer, "1", "numerator"},
      {"approx.q", K::Integer, "3", "denominator"},
      {"approx.theta", K::Real, "1e-6", "offset from a/q"},
      {"approx.N", K::RealList, "100,1000,10000", "scales"},
      {"approx.beta", K::Real, "2", "q <= (log N)^beta"},
      {"approx.error_max", K::Real, "0.05", "bound on the final error"},

      {"envelope.n_max", K::Integer, "12", "largest n"},
      {"envelope.points", K::Integer, "200", "log grid size"},
      {"envelope.xi_min", K::Real, "1e-6", "grid start"},
      {"envelope.xi_max", K::Real, "0.5", "grid end"},
      {"envelope.tau", K::Real, "0.5", "exponent in N_n = floor(2^{n^tau})"},
      {"envelope.growth_limit", K::Real, "2", "allowed growth of C* between halves"},

      {"multiparam.blocks", K::Integer, "2", "M, 2 or 3"},
      {"multiparam.times", K::RealList, "2,4,8", "per-parameter grid"},
      {"multiparam.functions", K::Integer, "4", "random f"},
      {"multiparam.boxes", K::Integer, "8", "random box sequences per f"},

      {"quad.abs_tol", K::Real, "1e-8", "quadrature acceptance"},
      {"quad.rel_tol", K::Real, "1e-10", "adaptive refinement target"},
      {"quad.sphere_samples", K::Integer, "16384", "Monte Carlo directions for k >= 3"},
  };
  std::sort(r.begin(), r.end(), [](const KeySpec& a, const KeySpec& b) { return a.name < b.name; });
  return r;
}

const KeySpec* find_key(const std::string& name) {
  const auto& reg = key_registry();
  auto it = std::lower_bound(reg.begin(), reg.end(), name,
                             [](const KeySpec& s, const std::string& n) { return s.name < n; });
  return it != reg.end() && it->name == name ? &*it : nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::int64_t> to_integer(const std::string& s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::optional<double> to_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

void validate(const KeySpec& spec, const std::string& value, std::size_t line) {
  switch (spec.kind) {
    case ValueKind::Integer:
      if (!to_integer(value)) throw ConfigError(spec.name + ": expected an integer, got '" + value + "'", line);
      break;
    case ValueKind::Real:
      if (!to_real(value)) throw ConfigError(spec.name + ": expected a number, got '" + value + "'", line);
      break;
    case ValueKind::RealList:
      if (!value.empty())
        for (const auto& item : split(value, ','))
          if (!to_real(item)) throw ConfigError(spec.name + ": bad list entry '" + item + "'", line);
      break;
    case ValueKind::Boolean:
      if (value != "true" && value != "false")
        throw ConfigError(spec.name + ": expected true or false, got '" + value + "'", line);
      break;
    case ValueKind::Text:
      break;
  }
}

}  // namespace

const std::vector<KeySpec>& key_registry() {
  static const std::vector<KeySpec> reg = build_registry();
  return reg;
}

Config::Config() {
  for (const auto& spec : key_registry()) {
    values_[spec.name] = spec.default_value;
    explicit_[spec.name] = false;
  }
}

void Config::set(const std::string& key, const std::string& value, std::size_t line) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key '" + key + "'", line);
  validate(*spec, value, line);
  values_[key] = value;
  explicit_[key] = true;
}

bool Config::is_default(const std::string& key) const { return !explicit_.at(key); }

Config Config::parse(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'section.key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos) throw ConfigError("key '" + key + "' has no section", lineno);
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")",
                        lineno);
    seen[key] = lineno;
    c.set(key, value, lineno);
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::int64_t Config::integer(const std::string& key) const { return *to_integer(values_.at(key)); }

double Config::real(const std::string& key) const { return *to_real(values_.at(key)); }

const std::string& Config::text(const std::string& key) const { return values_.at(key); }

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  const auto& v = values_.at(key);
  if (v.empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(*to_real(item));
  return out;
}

bool Config::boolean(const std::string& key) const { return values_.at(key) == "true"; }

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::string Config::hash() const { return git_blob_sha1(canonical()); }

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx, content.data(), content.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("SHA-1 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

region::ConvexRegion make_region(const Config& c, std::size_t k) {
  const std::string& shape = c.text("operator.region");
  const std::string& params = c.text("operator.region_params");
  if (shape == "ball") return region::ConvexRegion::ball(k);
  if (shape == "box") return region::ConvexRegion::box(k);
  if (shape == "ellipsoid") {
    std::vector<double> axes;
    for (const auto& item : split(params, ',')) {
      auto v = to_real(item);
      if (!v) throw ConfigError("operator.region_params: bad semi-axis '" + item + "'");
      axes.push_back(*v);
    }
    if (axes.size() != k) throw ConfigError("operator.region_params: need one semi-axis per variable");
    try {
      return region::ConvexRegion::ellipsoid(std::move(axes));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("operator.region_params: ") + e.what());
    }
  }
  if (shape == "half_spaces") {
    std::vector<std::vector<double>> normals;
    std::vector<double> offsets;
    if (!trim(params).empty())
      for (const auto& group : split(params, '|')) {
        std::istringstream in(group);
        std::vector<double> nums;
        double x;
        while (in >> x) nums.push_back(x);
        if (nums.size() != k + 1) throw ConfigError("operator.region_params: each half-space needs k + 1 numbers");
        offsets.push_back(nums.back());
        nums.pop_back();
        normals.push_back(std::move(nums));
      }
    try {
      return region::ConvexRegion::half_spaces(k, std::move(normals), std::move(offsets));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("operator.region_params: ") + e.what());
    }
  }
  throw ConfigError("operator.region: unknown shape '" + shape + "'");
}

}  // namespace

ops::OperatorConfig operator_config(const Config& c) {
  const auto kint = c.integer("operator.k_int");
  const auto kprime = c.integer("operator.k_prime");
  if (kint < 0 || kprime < 0 || kint + kprime == 0) throw ConfigError("operator.k_int + operator.k_prime must be >= 1");
  const auto k = static_cast<std::size_t>(kint + kprime);
  poly::PolynomialMap map = [&] {
    std::string text = c.text("operator.polynomial");
    try {
      return poly::parse_polynomial_map(text, k);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("operator.polynomial: ") + e.what());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("operator.polynomial: ") + e.what());
    }
  }();
  std::optional<kernel::CZKernel> kern;
  if (const auto& name = c.text("operator.kernel"); name != "none") {
    try {
      kern = kernel::builtin_kernel(name, k);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("operator.kernel: ") + e.what());
    }
  }
  ops::OperatorConfig cfg{std::move(map), make_region(c, k),
                          region::Split{static_cast<std::size_t>(kint), static_cast<std::size_t>(kprime)},
                          std::move(kern)};
  cfg.validate();
  return cfg;
}

ops::TimeGrid time_grid(const Config& c) {
  const std::string& kind = c.text("grid.kind");
  const auto count = c.integer("grid.count");
  try {
    if (kind == "dyadic") {
      if (count < 1) throw ConfigError("grid.count must be positive");
      return ops::TimeGrid::dyadic(static_cast<std::size_t>(count));
    }
    if (kind == "subexponential") {
      if (count < 1) throw ConfigError("grid.count must be positive");
      return ops::TimeGrid::subexponential(static_cast<std::size_t>(count), c.real("grid.tau"));
    }
    if (kind == "explicit") return ops::TimeGrid(c.reals("grid.values"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  throw ConfigError("grid.kind: unknown kind '" + kind + "'");
}

quad::Options quad_options(const Config& c) {
  quad::Options o;
  o.abs_tol = c.real("quad.abs_tol");
  o.rel_tol = c.real("quad.rel_tol");
  const auto n = c.integer("quad.sphere_samples");
  if (n < 2) throw ConfigError("quad.sphere_samples must be at least 2");
  o.sphere_samples = static_cast<std::size_t>(n);
  o.seed = seed(c);
  return o;
}

std::uint64_t seed(const Config& c) { return static_cast<std::uint64_t>(c.integer("run.seed")); }

}  // namespace primelab::cli
