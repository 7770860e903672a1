#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primelab::seminorms {

using Complex = std::complex<double>;

// Tolerance used by the exact-inequality checks.
inline constexpr double kInequalityTol = 1e-12;

// f : I -> C sampled at strictly increasing times.
class SampledPath {
 public:
  SampledPath(std::vector<double> times, std::vector<Complex> values);
  // Times 0, 1, ..., n-1.
  static SampledPath indexed(std::vector<Complex> values);

  std::size_t size() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  // CSV "t, re, im" with a header row.
  std::string to_csv() const;
  static SampledPath from_csv(std::string_view text);

 private:
  std::vector<double> times_;
  std::vector<Complex> values_;
};

// N_lambda: longest chain t_0 < ... < t_J with every increment >= lambda in
// modulus. O(n^2).
std::size_t jump_count(const SampledPath& path, double lambda);

// V^r by longest-path dynamic programming over ordered pairs. O(n^2).
double variation(const SampledPath& path, double r);

// O^r_{I,N}: windows [I_j, I_{j+1}) for j = 0..N-1. f(I_j) is read at the first
// sample >= I_j; a window without samples contributes 0.
double oscillation(const SampledPath& path, std::span<const double> I, std::size_t N, double r);

// f on a tensor grid axes[0] x ... x axes[M-1], row-major (last axis fastest).
class GridField {
 public:
  GridField(std::vector<std::vector<double>> axes, std::vector<Complex> values);

  std::size_t parameters() const noexcept { return axes_.size(); }
  const std::vector<std::vector<double>>& axes() const noexcept { return axes_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex at(std::span<const std::size_t> index) const;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<Complex> values_;
};

// I_0, I_1, ... in R^M, strictly increasing in every coordinate.
class BoxSequence {
 public:
  explicit BoxSequence(std::vector<std::vector<double>> points);

  std::size_t parameters() const noexcept { return points_.empty() ? 0 : points_.front().size(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<double>& operator[](std::size_t j) const { return points_[j]; }

 private:
  std::vector<std::vector<double>> points_;
};

// M-parameter O^r_{I,N} over boxes B[I_j] = prod [I_{j,m}, I_{j+1,m}).
double multi_oscillation(const GridField& field, const BoxSequence& I, std::size_t N, double r);

struct RademacherMenshovReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// a[i] holds a_{k+i} for k <= k+i <= 2^m. With clip = true the dyadic intervals
// [j 2^i, (j+1) 2^i) meeting [k, 2^m] are cut at k; otherwise only those lying
// inside [k, 2^m] are used.
RademacherMenshovReport rademacher_menshov_check(std::span<const Complex> a, std::uint64_t k, unsigned m,
                                                 bool clip = true);

// Exhaustive oracles over all subsequences.
inline constexpr std::size_t kOracleVariationCap = 15;
inline constexpr std::size_t kOracleJumpCap = 12;
double oracle_variation(const SampledPath& path, double r);
std::size_t oracle_jump(const SampledPath& path, double lambda);

}  // namespace primelab::seminorms
