#include "primelab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "primelab/arith.hpp"
#include "primelab/errors.hpp"

namespace primelab::ops {

namespace {

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto c : p) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using Accumulator = std::unordered_map<Point, Complex, PointHash>;

LatticeFunction collect(std::size_t dim, Accumulator&& acc, double divisor) {
  LatticeFunction out(dim);
  for (auto& [x, v] : acc) out.set(x, divisor == 1.0 ? v : v / divisor);
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw SizeLimitError("lattice coordinate overflows 64 bits", 64);
  return r;
}

double log_weight(const Point& np, std::size_t integer_dims) {
  double w = 1.0;
  for (std::size_t i = integer_dims; i < np.size(); ++i) w *= std::log(static_cast<double>(std::llabs(np[i])));
  return w;
}

arith::SignedPrimeSet primes_for(const region::Split& split, double t) {
  if (split.prime_dims == 0) return {};
  return arith::sieve_primes(std::max(t, 2.0));
}

}  // namespace

// LatticeFunction ------------------------------------------------------------

LatticeFunction::LatticeFunction(std::size_t dimension) : dim_(dimension) {
  if (dimension == 0) throw DomainError("lattice function needs dimension >= 1");
}

LatticeFunction LatticeFunction::delta(std::size_t dimension) { return delta(Point(dimension, 0)); }

LatticeFunction LatticeFunction::delta(Point at) {
  LatticeFunction f(at.size());
  f.set(std::move(at), 1.0);
  return f;
}

void LatticeFunction::check(const Point& x) const {
  if (x.size() != dim_) throw DomainError("point dimension does not match lattice function");
}

Complex LatticeFunction::operator()(const Point& x) const {
  check(x);
  auto it = values_.find(x);
  return it == values_.end() ? Complex{} : it->second;
}

void LatticeFunction::set(Point x, Complex v) {
  check(x);
  values_[std::move(x)] = v;
}

void LatticeFunction::add(const Point& x, Complex v) {
  check(x);
  values_[x] += v;
}

void LatticeFunction::prune() {
  std::erase_if(values_, [](const auto& kv) { return kv.second == Complex{}; });
}

double LatticeFunction::norm(double p) const {
  if (!(p >= 1.0)) throw DomainError("l^p norm needs p >= 1");
  if (std::isinf(p)) return sup_norm();
  double s = 0.0;
  for (const auto& [x, v] : values_) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

double LatticeFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& [x, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

LatticeFunction& LatticeFunction::operator*=(Complex c) {
  for (auto& [x, v] : values_) v *= c;
  return *this;
}

std::string LatticeFunction::serialize() const {
  std::string out;
  char buf[64];
  for (const auto& [x, v] : values_) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(x[i]);
    }
    std::snprintf(buf, sizeof buf, "  %.17g %.17g\n", v.real(), v.imag());
    out += buf;
  }
  return out;
}

LatticeFunction LatticeFunction::parse(std::string_view text, std::size_t dimension) {
  LatticeFunction f(dimension);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Point x(dimension);
    for (auto& c : x) {
      if (!(ls >> c)) throw ConfigError("bad lattice coordinate", lineno);
    }
    double re = 0, im = 0;
    if (!(ls >> re >> im)) throw ConfigError("expected real and imaginary parts", lineno);
    std::string extra;
    if (ls >> extra) throw ConfigError("trailing text '" + extra + "'", lineno);
    if (f.values_.count(x)) throw ConfigError("duplicate lattice point", lineno);
    f.set(std::move(x), {re, im});
  }
  return f;
}

bool operator==(const LatticeFunction& a, const LatticeFunction& b) {
  if (a.dim_ != b.dim_) return false;
  for (const auto& [x, v] : a.values_)
    if (b(x) != v) return false;
  for (const auto& [x, v] : b.values_)
    if (a(x) != v) return false;
  return true;
}

// Configuration ----------------------------------------------------------------

void OperatorConfig::validate() const {
  const std::size_t k = map.source_dim();
  if (split.total() != k)
    throw ConfigError("split k' + k'' = " + std::to_string(split.total()) + " but the map has " + std::to_string(k) +
                      " variables");
  if (region.dimension() != k) throw ConfigError("region dimension does not match the map");
  if (kernel && kernel->dimension() != k) throw ConfigError("kernel dimension does not match the map");
}

TimeGrid::TimeGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) throw DomainError("time grid values must be positive");
    if (i && !(values_[i] > values_[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
}

std::int64_t TimeGrid::generator_value(std::size_t n, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must lie in (0, 1]");
  if (n == 0) return 1;
  const double e = std::pow(static_cast<double>(n), tau);
  if (e >= 62.0) throw SizeLimitError("N_n exceeds 2^62", 62);
  return static_cast<std::int64_t>(std::floor(std::exp2(e)));
}

TimeGrid TimeGrid::subexponential(std::size_t n_max, double tau) {
  std::vector<double> v;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(generator_value(n, tau));
    if (v.empty() || x > v.back()) v.push_back(x);
  }
  return TimeGrid(std::move(v));
}

TimeGrid TimeGrid::dyadic(std::size_t count) {
  std::vector<double> v;
  for (std::size_t i = 1; i <= count; ++i) v.push_back(std::ldexp(1.0, static_cast<int>(i)));
  return TimeGrid(std::move(v));
}

// Orbits -----------------------------------------------------------------------

std::vector<OrbitTerm> orbit(const OperatorConfig& cfg, double t) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("time must be positive");
  std::vector<OrbitTerm> terms;
  region::for_each_lattice_point(cfg.region, t, cfg.split, primes_for(cfg.split, t), [&](const Point& np) {
    auto shift = cfg.map.eval_i64(np);
    if (!shift) throw SizeLimitError("polynomial value overflows 64 bits", 64);
    terms.push_back({np, std::move(*shift), log_weight(np, cfg.split.integer_dims)});
  });
  return terms;
}

double chebyshev(const region::ConvexRegion& omega, region::Split split, double t) {
  if (!(t > 0.0)) throw DomainError("time must be positive");
  double theta = 0.0;
  region::for_each_lattice_point(omega, t, split, primes_for(split, t),
                                 [&](const Point& np) { theta += log_weight(np, split.integer_dims); });
  if (theta == 0.0) throw DegenerateNormalization("theta_Omega(t) = 0 at t = " + std::to_string(t));
  return theta;
}

namespace {

LatticeFunction scatter(const OperatorConfig& cfg, const std::vector<OrbitTerm>& terms, const LatticeFunction& f,
                        double divisor, bool with_kernel) {
  const std::size_t d = cfg.map.target_dim();
  if (f.dimension() != d) throw DomainError("lattice function dimension does not match the map target");
  std::vector<Complex> weight(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Complex w = terms[i].log_weight;
    if (with_kernel) {
      std::vector<double> x(terms[i].source.begin(), terms[i].source.end());
      w *= (*cfg.kernel)(x);
    }
    weight[i] = w;
  }
  Accumulator acc;
  Point x(d);
  for (const auto& [y, v] : f.support()) {
    if (v == Complex{}) continue;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) x[j] = checked_add(y[j], terms[i].shift[j]);
      acc[x] += v * weight[i];
    }
  }
  return collect(d, std::move(acc), divisor);
}

}  // namespace

LatticeFunction average(const OperatorConfig& cfg, double t, const LatticeFunction& f) {
  if (cfg.kernel) throw ConfigError("average called with a kernel configured");
  auto terms = orbit(cfg, t);
  double theta = 0.0;
  for (const auto& term : terms) theta += term.log_weight;
  if (theta == 0.0) throw DegenerateNormalization("theta_Omega(t) = 0 at t = " + std::to_string(t));
  return scatter(cfg, terms, f, theta, false);
}

LatticeFunction cotlar(const OperatorConfig& cfg, double t, const LatticeFunction& f) {
  if (!cfg.kernel) throw ConfigError("cotlar called without a kernel");
  auto terms = orbit(cfg, t);
  std::erase_if(terms, [](const OrbitTerm& term) {
    return std::all_of(term.source.begin(), term.source.end(), [](std::int64_t c) { return c == 0; });
  });
  return scatter(cfg, terms, f, 1.0, true);
}

LatticeFunction apply(const OperatorConfig& cfg, double t, const LatticeFunction& f) {
  return cfg.kernel ? cotlar(cfg, t, f) : average(cfg, t, f);
}

// Composition ------------------------------------------------------------------

namespace {

std::vector<std::size_t> canonical_block_order(std::span<const BlockConfig> blocks, std::span<const double> times,
                                               std::size_t d) {
  if (blocks.empty()) throw ConfigError("composition needs at least one block");
  if (times.size() != blocks.size()) throw ConfigError("one time per block is required");
  std::vector<int> owner(d, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    if (blk.config.kernel) throw ConfigError("composed averages take no kernel");
    blk.config.validate();
    if (blk.coordinates.size() != blk.config.map.target_dim())
      throw ConfigError("block " + std::to_string(b) + " lists the wrong number of coordinates");
    for (auto c : blk.coordinates) {
      if (c >= d) throw ConfigError("block coordinate out of range");
      if (owner[c] != -1) throw ConfigError("coordinate blocks overlap at coordinate " + std::to_string(c));
      owner[c] = static_cast<int>(b);
    }
  }
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t b) { return *std::min_element(blocks[b].coordinates.begin(), blocks[b].coordinates.end()); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  return order;
}

}  // namespace

LatticeFunction composed_average(std::span<const BlockConfig> blocks, std::span<const double> times,
                                 const LatticeFunction& f) {
  const std::size_t d = f.dimension();
  const auto order = canonical_block_order(blocks, times, d);
  const std::size_t m = order.size();

  std::vector<std::vector<OrbitTerm>> orbits(m);
  double norm = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    orbits[i] = orbit(blocks[order[i]].config, times[order[i]]);
    double theta = 0.0;
    for (const auto& term : orbits[i]) theta += term.log_weight;
    if (theta == 0.0) throw DegenerateNormalization("theta_Omega(t) = 0 in composed average");
    norm *= theta;
  }

  // Flatten the product region into (shift in Z^d, product weight).
  std::vector<std::pair<Point, double>> product{{Point(d, 0), 1.0}};
  for (std::size_t i = 0; i < m; ++i) {
    const auto& coords = blocks[order[i]].coordinates;
    std::vector<std::pair<Point, double>> next;
    next.reserve(product.size() * orbits[i].size());
    for (const auto& [shift, w] : product) {
      for (const auto& term : orbits[i]) {
        Point s = shift;
        for (std::size_t j = 0; j < coords.size(); ++j) s[coords[j]] = term.shift[j];
        next.emplace_back(std::move(s), w * term.log_weight);
      }
    }
    product = std::move(next);
  }

  Accumulator acc;
  Point x(d);
  for (const auto& [y, v] : f.support()) {
    if (v == Complex{}) continue;
    for (const auto& [shift, w] : product) {
      for (std::size_t j = 0; j < d; ++j) x[j] = checked_add(y[j], shift[j]);
      acc[x] += v * w;
    }
  }
  return collect(d, std::move(acc), norm);
}

LatticeFunction sequential_composition(std::span<const BlockConfig> blocks, std::span<const double> times,
                                       const LatticeFunction& f) {
  const std::size_t d = f.dimension();
  canonical_block_order(blocks, times, d);
  LatticeFunction g = f;
  for (std::size_t b = blocks.size(); b-- > 0;) {
    const auto& blk = blocks[b];
    auto terms = orbit(blk.config, times[b]);
    double theta = 0.0;
    for (const auto& term : terms) theta += term.log_weight;
    if (theta == 0.0) throw DegenerateNormalization("theta_Omega(t) = 0 in composed average");
    Accumulator acc;
    Point x(d);
    for (const auto& [y, v] : g.support()) {
      if (v == Complex{}) continue;
      for (const auto& term : terms) {
        x = y;
        for (std::size_t j = 0; j < blk.coordinates.size(); ++j)
          x[blk.coordinates[j]] = checked_add(y[blk.coordinates[j]], term.shift[j]);
        acc[x] += v * term.log_weight;
      }
    }
    g = collect(d, std::move(acc), theta);
  }
  return g;
}

// Functionals ------------------------------------------------------------------

double vector_norm(std::span<const LatticeFunction> fs, double p) {
  if (!(p > 1.0)) throw DomainError("p must exceed 1");
  std::map<Point, double> sq;
  for (const auto& f : fs)
    for (const auto& [x, v] : f.support()) sq[x] += std::norm(v);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [x, s] : sq) m = std::max(m, std::sqrt(s));
    return m;
  }
  double total = 0.0;
  for (const auto& [x, s] : sq) total += std::pow(std::sqrt(s), p);
  return std::pow(total, 1.0 / p);
}

double sup_functional(const OperatorConfig& cfg, const TimeGrid& grid, std::span<const LatticeFunction> fs, double p,
                      SupVariant variant) {
  if (!(p > 1.0)) throw DomainError("p must exceed 1");
  std::map<Point, double> sq;  // sum_i (sup_t |...|)^2
  for (const auto& f : fs) {
    std::map<Point, double> sup;
    std::optional<LatticeFunction> base;
    if (variant == SupVariant::Difference) base = apply(cfg, grid.front(), f);
    for (double t : grid.values()) {
      const LatticeFunction g = apply(cfg, t, f);
      if (base) {
        for (const auto& [x, v] : g.support()) {
          double& s = sup[x];
          s = std::max(s, std::abs(v - (*base)(x)));
        }
        for (const auto& [x, v] : base->support()) {
          double& s = sup[x];
          s = std::max(s, std::abs(g(x) - v));
        }
      } else {
        for (const auto& [x, v] : g.support()) {
          double& s = sup[x];
          s = std::max(s, std::abs(v));
        }
      }
    }
    for (const auto& [x, s] : sup) sq[x] += s * s;
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [x, s] : sq) m = std::max(m, std::sqrt(s));
    return m;
  }
  double total = 0.0;
  for (const auto& [x, s] : sq) total += std::pow(std::sqrt(s), p);
  return std::pow(total, 1.0 / p);
}

}  // namespace primelab::ops
