#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primelab/arith.hpp"

namespace primelab::poly {

using arith::Integer;

// Exponent vector gamma in N_0^k.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& gamma);

// Finite set of nonzero multi-indices in lexicographic order (coordinates
// compared left to right).
class MultiIndexSet {
 public:
  MultiIndexSet(std::size_t k, std::vector<MultiIndex> indices);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return indices_.size(); }
  int degree() const noexcept { return degree_; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  std::optional<std::size_t> index_of(const MultiIndex& gamma) const;

  // Every gamma with 0 < |gamma| <= degree() is present.
  bool is_complete() const;

  friend bool operator==(const MultiIndexSet&, const MultiIndexSet&) = default;

 private:
  std::size_t k_;
  int degree_ = 0;
  std::vector<MultiIndex> indices_;
};

// Gamma = {gamma != 0 : |gamma| <= degree}.
MultiIndexSet gamma_set(std::size_t k, int degree);

// Q(x) = (x^gamma : gamma in Gamma), exact.
std::vector<Integer> canonical_eval(const MultiIndexSet& gamma, std::span<const std::int64_t> x);

// Same, or nullopt when some coordinate does not fit in 64 bits.
std::optional<std::vector<std::int64_t>> canonical_eval_i64(const MultiIndexSet& gamma,
                                                            std::span<const std::int64_t> x);

// P = (P_1, ..., P_d) : Z^k -> Z^d with integer coefficients and P_j(0) = 0.
class PolynomialMap {
 public:
  using Component = std::map<MultiIndex, std::int64_t>;

  PolynomialMap(std::size_t k, std::vector<Component> components);

  std::size_t source_dim() const noexcept { return k_; }
  std::size_t target_dim() const noexcept { return components_.size(); }
  int degree() const noexcept { return degree_; }
  const std::vector<Component>& components() const noexcept { return components_; }

  std::vector<Integer> eval(std::span<const std::int64_t> x) const;
  std::optional<std::vector<std::int64_t>> eval_i64(std::span<const std::int64_t> x) const;
  std::vector<double> eval_real(std::span<const double> x) const;

  // Row j holds the coefficients of P_j against gamma; every monomial of P must
  // belong to gamma.
  std::vector<std::vector<std::int64_t>> lift(const MultiIndexSet& gamma) const;

  // Inverse of parse_polynomial_map, one component per line.
  std::string to_string() const;

  friend bool operator==(const PolynomialMap&, const PolynomialMap&) = default;

 private:
  std::size_t k_;
  int degree_ = 0;
  std::vector<Component> components_;
};

inline std::vector<Integer> map_eval(const PolynomialMap& p, std::span<const std::int64_t> x) {
  return p.eval(x);
}

// The monomial map x -> (x^gamma : gamma in Gamma) as a PolynomialMap.
PolynomialMap canonical_map(const MultiIndexSet& gamma);

// Grammar (whitespace-insensitive, '#' starts a comment, ';' or newline
// separates components):
//   component := term { ('+' | '-') term }
//   term      := ['+' | '-'] factor { '*' factor }
//   factor    := integer | var ['^' integer]
//   var       := 'n' index | 'n'          ('n' alone means n1)
// Example: "3*n1^2*n2 - n2" or "n + 2*n^3".
// k defaults to the largest variable index seen.
PolynomialMap parse_polynomial_map(std::string_view text, std::optional<std::size_t> k = std::nullopt);

// Diagonal |Gamma| x |Gamma| matrix A with (A v)_gamma = |gamma| v_gamma.
class DegreeMatrix {
 public:
  explicit DegreeMatrix(const MultiIndexSet& gamma);
  explicit DegreeMatrix(std::vector<int> diagonal);

  const std::vector<int>& diagonal() const noexcept { return diagonal_; }
  std::size_t size() const noexcept { return diagonal_.size(); }

 private:
  std::vector<int> diagonal_;
};

// t^A v = (t^{|gamma|} v_gamma : gamma in Gamma).
std::vector<double> scale(const DegreeMatrix& a, double t, std::span<const double> v);

}  // namespace primelab::poly
