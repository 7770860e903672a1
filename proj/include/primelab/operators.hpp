#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primelab/kernel.hpp"
#include "primelab/poly.hpp"
#include "primelab/region.hpp"

namespace primelab::ops {

using Complex = std::complex<double>;
using region::Point;

// Finitely supported f : Z^d -> C. Points outside the support read as 0.
class LatticeFunction {
 public:
  explicit LatticeFunction(std::size_t dimension);

  static LatticeFunction delta(std::size_t dimension);
  static LatticeFunction delta(Point at);

  std::size_t dimension() const noexcept { return dim_; }
  const std::map<Point, Complex>& support() const noexcept { return values_; }
  std::size_t support_size() const noexcept { return values_.size(); }

  Complex operator()(const Point& x) const;
  void set(Point x, Complex v);
  void add(const Point& x, Complex v);
  // Drops entries that are exactly zero.
  void prune();

  // l^p norm, p >= 1.
  double norm(double p) const;
  double sup_norm() const;

  LatticeFunction& operator*=(Complex c);

  // Lines "x1 ... xd  re im", lexicographic in x, 17 significant digits.
  std::string serialize() const;
  static LatticeFunction parse(std::string_view text, std::size_t dimension);

  // Equal as functions (stored zeros are ignored), bitwise on values.
  friend bool operator==(const LatticeFunction& a, const LatticeFunction& b);

 private:
  void check(const Point& x) const;

  std::size_t dim_;
  std::map<Point, Complex> values_;
};

// M_t data: polynomial map, region, split and, for Cotlar operators, a kernel.
struct OperatorConfig {
  poly::PolynomialMap map;
  region::ConvexRegion region;
  region::Split split;
  std::optional<kernel::CZKernel> kernel;

  void validate() const;
  bool is_average() const noexcept { return !kernel.has_value(); }
};

// Finite strictly increasing set of positive times.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> values);

  // Distinct values of N_n = floor(2^{n^tau}) for n = 1..n_max.
  static TimeGrid subexponential(std::size_t n_max, double tau);
  // 2, 4, ..., 2^count.
  static TimeGrid dyadic(std::size_t count);
  // N_n = floor(2^{n^tau}); n = 0 gives 1.
  static std::int64_t generator_value(std::size_t n, double tau);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double front() const { return values_.front(); }

 private:
  std::vector<double> values_;
};

// (n, p) in Omega_t with its image P(n, p) and prod log|p_i|.
struct OrbitTerm {
  Point source;
  Point shift;
  double log_weight = 1.0;
};

std::vector<OrbitTerm> orbit(const OperatorConfig& cfg, double t);

// theta_Omega(t); DegenerateNormalization when it vanishes.
double chebyshev(const region::ConvexRegion& omega, region::Split split, double t);

// A_t f(x) = theta(t)^{-1} sum f(x - P(n,p)) prod log|p_i|.
LatticeFunction average(const OperatorConfig& cfg, double t, const LatticeFunction& f);

// H_t f(x) = sum_{(n,p) != 0} f(x - P(n,p)) K(n,p) prod log|p_i|.
LatticeFunction cotlar(const OperatorConfig& cfg, double t, const LatticeFunction& f);

// average or cotlar depending on cfg.kernel.
LatticeFunction apply(const OperatorConfig& cfg, double t, const LatticeFunction& f);

// One factor of a composed average acting on the listed target coordinates.
struct BlockConfig {
  OperatorConfig config;
  std::vector<std::size_t> coordinates;
};

// A_{t_1} o ... o A_{t_M} f via the single product-region sum. Blocks are
// summed in order of their smallest coordinate, so the result does not depend
// on the order in which they are listed.
LatticeFunction composed_average(std::span<const BlockConfig> blocks, std::span<const double> times,
                                 const LatticeFunction& f);

// The same operator evaluated as M successive one-parameter averages.
LatticeFunction sequential_composition(std::span<const BlockConfig> blocks, std::span<const double> times,
                                       const LatticeFunction& f);

enum class SupVariant {
  Difference,  // sup_t |M_t f_i - M_{t_0} f_i|, t_0 = min of grid
  Maximal,     // sup_t |M_t f_i|
};

// || ( sum_i sup_t |...|^2 )^{1/2} ||_{l^p}.
double sup_functional(const OperatorConfig& cfg, const TimeGrid& grid, std::span<const LatticeFunction> fs, double p,
                      SupVariant variant = SupVariant::Difference);

// || (sum_i |f_i|^2)^{1/2} ||_{l^p}.
double vector_norm(std::span<const LatticeFunction> fs, double p);

}  // namespace primelab::ops
