#include "primelab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "primelab/errors.hpp"

namespace primelab::poly {

int total_degree(const MultiIndex& gamma) { return std::accumulate(gamma.begin(), gamma.end(), 0); }

MultiIndexSet::MultiIndexSet(std::size_t k, std::vector<MultiIndex> indices)
    : k_(k), indices_(std::move(indices)) {
  if (k_ == 0) throw DomainError("multi-index dimension must be positive");
  if (indices_.empty()) throw DomainError("multi-index set must be nonempty");
  for (const auto& g : indices_) {
    if (g.size() != k_) throw DomainError("multi-index has wrong length");
    if (std::any_of(g.begin(), g.end(), [](int e) { return e < 0; }))
      throw DomainError("multi-index has a negative exponent");
    const int d = total_degree(g);
    if (d == 0) throw DomainError("multi-index set may not contain 0");
    degree_ = std::max(degree_, d);
  }
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw DomainError("multi-index set has duplicates");
}

std::optional<std::size_t> MultiIndexSet::index_of(const MultiIndex& gamma) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), gamma);
  if (it == indices_.end() || *it != gamma) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

bool MultiIndexSet::is_complete() const { return *this == gamma_set(k_, degree_); }

namespace {

void enumerate_indices(MultiIndex& g, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
  if (pos == g.size()) {
    if (total_degree(g) > 0) out.push_back(g);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    g[pos] = e;
    enumerate_indices(g, pos + 1, remaining - e, out);
  }
  g[pos] = 0;
}

}  // namespace

MultiIndexSet gamma_set(std::size_t k, int degree) {
  if (k == 0 || degree < 1) throw DomainError("gamma_set needs k >= 1 and degree >= 1");
  std::vector<MultiIndex> out;
  MultiIndex g(k, 0);
  enumerate_indices(g, 0, degree, out);
  return MultiIndexSet(k, std::move(out));
}

namespace {

bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

bool checked_add(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_add_overflow(a, b, &out);
}

std::optional<std::int64_t> monomial_i64(const MultiIndex& g, std::span<const std::int64_t> x) {
  std::int64_t v = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (int e = 0; e < g[i]; ++e)
      if (!checked_mul(v, x[i], v)) return std::nullopt;
  return v;
}

Integer monomial_big(const MultiIndex& g, std::span<const std::int64_t> x) {
  Integer v = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] > 0) v *= boost::multiprecision::pow(Integer(x[i]), static_cast<unsigned>(g[i]));
  return v;
}

double monomial_real(const MultiIndex& g, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (int e = 0; e < g[i]; ++e) v *= x[i];
  return v;
}

}  // namespace

std::vector<Integer> canonical_eval(const MultiIndexSet& gamma, std::span<const std::int64_t> x) {
  if (x.size() != gamma.k()) throw DomainError("canonical_eval: point has wrong dimension");
  std::vector<Integer> out;
  out.reserve(gamma.size());
  for (const auto& g : gamma.indices()) {
    if (auto v = monomial_i64(g, x)) out.emplace_back(*v);
    else out.push_back(monomial_big(g, x));
  }
  return out;
}

std::optional<std::vector<std::int64_t>> canonical_eval_i64(const MultiIndexSet& gamma,
                                                            std::span<const std::int64_t> x) {
  if (x.size() != gamma.k()) throw DomainError("canonical_eval: point has wrong dimension");
  std::vector<std::int64_t> out;
  out.reserve(gamma.size());
  for (const auto& g : gamma.indices()) {
    auto v = monomial_i64(g, x);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

PolynomialMap::PolynomialMap(std::size_t k, std::vector<Component> components)
    : k_(k), components_(std::move(components)) {
  if (k_ == 0) throw DomainError("polynomial map needs k >= 1");
  if (components_.empty()) throw DomainError("polynomial map needs at least one component");
  for (auto& c : components_) {
    std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
    for (const auto& [g, coeff] : c) {
      if (g.size() != k_) throw DomainError("monomial has wrong number of exponents");
      if (std::any_of(g.begin(), g.end(), [](int e) { return e < 0; }))
        throw DomainError("negative exponent");
      const int d = total_degree(g);
      if (d == 0) throw DomainError("polynomial map components must vanish at 0 (constant term found)");
      degree_ = std::max(degree_, d);
    }
  }
}

std::vector<Integer> PolynomialMap::eval(std::span<const std::int64_t> x) const {
  if (x.size() != k_) throw DomainError("map_eval: point has wrong dimension");
  std::vector<Integer> out(components_.size());
  for (std::size_t j = 0; j < components_.size(); ++j)
    for (const auto& [g, coeff] : components_[j]) out[j] += coeff * monomial_big(g, x);
  return out;
}

std::optional<std::vector<std::int64_t>> PolynomialMap::eval_i64(std::span<const std::int64_t> x) const {
  if (x.size() != k_) throw DomainError("map_eval: point has wrong dimension");
  std::vector<std::int64_t> out(components_.size(), 0);
  for (std::size_t j = 0; j < components_.size(); ++j) {
    for (const auto& [g, coeff] : components_[j]) {
      auto m = monomial_i64(g, x);
      std::int64_t term = 0;
      if (!m || !checked_mul(*m, coeff, term) || !checked_add(out[j], term, out[j])) return std::nullopt;
    }
  }
  return out;
}

std::vector<double> PolynomialMap::eval_real(std::span<const double> x) const {
  if (x.size() != k_) throw DomainError("map_eval: point has wrong dimension");
  std::vector<double> out(components_.size(), 0.0);
  for (std::size_t j = 0; j < components_.size(); ++j)
    for (const auto& [g, coeff] : components_[j])
      out[j] += static_cast<double>(coeff) * monomial_real(g, x);
  return out;
}

std::vector<std::vector<std::int64_t>> PolynomialMap::lift(const MultiIndexSet& gamma) const {
  if (gamma.k() != k_) throw DomainError("lift: Gamma has the wrong dimension");
  std::vector<std::vector<std::int64_t>> rows(components_.size(), std::vector<std::int64_t>(gamma.size(), 0));
  for (std::size_t j = 0; j < components_.size(); ++j) {
    for (const auto& [g, coeff] : components_[j]) {
      auto idx = gamma.index_of(g);
      if (!idx) throw DomainError("lift: monomial not contained in Gamma");
      rows[j][*idx] = coeff;
    }
  }
  return rows;
}

std::string PolynomialMap::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    if (j) os << '\n';
    if (components_[j].empty()) {
      os << "0";
      continue;
    }
    bool first = true;
    for (const auto& [g, coeff] : components_[j]) {
      if (first) os << (coeff < 0 ? "-" : "");
      else os << (coeff < 0 ? " - " : " + ");
      first = false;
      os << (coeff < 0 ? -coeff : coeff);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        os << "*n" << (i + 1);
        if (g[i] > 1) os << '^' << g[i];
      }
    }
  }
  return os.str();
}

PolynomialMap canonical_map(const MultiIndexSet& gamma) {
  std::vector<PolynomialMap::Component> comps;
  comps.reserve(gamma.size());
  for (const auto& g : gamma.indices()) comps.push_back({{g, 1}});
  return PolynomialMap(gamma.k(), std::move(comps));
}

namespace {

// Recursive-descent parser for one component.
class ComponentParser {
 public:
  ComponentParser(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  // Terms as (variable -> exponent, coefficient) before dimension is known.
  std::vector<std::pair<std::map<std::size_t, int>, std::int64_t>> parse() {
    std::vector<std::pair<std::map<std::size_t, int>, std::int64_t>> terms;
    skip();
    if (at_end()) fail("empty component");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(term(sign));
      skip();
    }
    return terms;
  }

  std::size_t max_var() const { return max_var_; }

 private:
  std::pair<std::map<std::size_t, int>, std::int64_t> term(int sign) {
    std::map<std::size_t, int> vars;
    std::int64_t coeff = sign;
    while (true) {
      skip();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::int64_t c = integer();
        if (__builtin_mul_overflow(coeff, c, &coeff)) fail("coefficient overflow");
      } else if (peek() == 'n') {
        get();
        std::size_t var = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) var = static_cast<std::size_t>(integer());
        if (var == 0) fail("variables are numbered from 1");
        int e = 1;
        skip();
        if (peek() == '^') {
          get();
          skip();
          e = static_cast<int>(integer());
        }
        vars[var] += e;
        max_var_ = std::max(max_var_, var);
      } else {
        fail(std::string("unexpected character '") + (at_end() ? '?' : peek()) + "'");
      }
      skip();
      if (peek() != '*') break;
      get();
    }
    std::erase_if(vars, [](const auto& kv) { return kv.second == 0; });
    return {vars, coeff};
  }

  std::int64_t integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, get() - '0', &v))
        fail("integer overflow");
    }
    return v;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("polynomial: " + msg + " at column " + std::to_string(pos_ + 1), line_);
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

}  // namespace

PolynomialMap parse_polynomial_map(std::string_view text, std::optional<std::size_t> k) {
  std::vector<std::vector<std::pair<std::map<std::size_t, int>, std::int64_t>>> parsed;
  std::vector<std::size_t> lines;
  std::size_t max_var = 0;
  std::size_t line_no = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '\n' && text[i] != ';') continue;
    std::string_view piece = text.substr(start, i - start);
    if (auto hash = piece.find('#'); hash != std::string_view::npos) piece = piece.substr(0, hash);
    if (piece.find_first_not_of(" \t\r") != std::string_view::npos) {
      ComponentParser p(piece, line_no);
      parsed.push_back(p.parse());
      lines.push_back(line_no);
      max_var = std::max(max_var, p.max_var());
    }
    if (i < text.size() && text[i] == '\n') ++line_no;
    start = i + 1;
  }
  if (parsed.empty()) throw ConfigError("polynomial: no components", line_no);
  const std::size_t dim = k.value_or(std::max<std::size_t>(max_var, 1));
  if (max_var > dim)
    throw ConfigError("polynomial: variable n" + std::to_string(max_var) + " exceeds k = " + std::to_string(dim));

  std::vector<PolynomialMap::Component> comps;
  for (std::size_t j = 0; j < parsed.size(); ++j) {
    PolynomialMap::Component c;
    for (const auto& [vars, coeff] : parsed[j]) {
      MultiIndex g(dim, 0);
      for (const auto& [v, e] : vars) g[v - 1] = e;
      if (total_degree(g) == 0) throw ConfigError("polynomial: constant term not allowed", lines[j]);
      std::int64_t& slot = c[g];
      if (__builtin_add_overflow(slot, coeff, &slot)) throw ConfigError("polynomial: coefficient overflow", lines[j]);
    }
    comps.push_back(std::move(c));
  }
  return PolynomialMap(dim, std::move(comps));
}

DegreeMatrix::DegreeMatrix(const MultiIndexSet& gamma) {
  diagonal_.reserve(gamma.size());
  for (const auto& g : gamma.indices()) diagonal_.push_back(total_degree(g));
}

DegreeMatrix::DegreeMatrix(std::vector<int> diagonal) : diagonal_(std::move(diagonal)) {
  for (int d : diagonal_)
    if (d < 1) throw DomainError("degree matrix entries must be positive");
}

std::vector<double> scale(const DegreeMatrix& a, double t, std::span<const double> v) {
  if (!(t > 0)) throw DomainError("scale: t must be positive");
  if (v.size() != a.size()) throw DomainError("scale: vector has wrong dimension");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(t, a.diagonal()[i]) * v[i];
  return out;
}

}  // namespace primelab::poly
