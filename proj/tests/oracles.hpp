#pragma once

// Independent reference computations for the unit and acceptance tests. Each
// one is a direct transcription of a definition with no shared code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> primes_upto(double bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline std::uint64_t totient(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= q; ++a) c += std::gcd(a, q) == 1;
  return c;
}

// e(x) = exp(2 pi i x) without any range reduction.
inline Complex e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

// Sum over all subsequences of sum |increment|^r, maximized.
inline double variation(const std::vector<Complex>& v, double r) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    int prev = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (prev >= 0) s += std::pow(std::abs(v[i] - v[static_cast<std::size_t>(prev)]), r);
        prev = static_cast<int>(i);
      }
    best = std::max(best, s);
  }
  return std::pow(best, 1.0 / r);
}

// Largest J with a chain of J increments each >= lambda.
inline std::size_t jumps(const std::vector<Complex>& v, double lambda) {
  const std::size_t n = v.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t j = 0;
    int prev = -1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (mask >> i & 1) {
        if (prev >= 0) {
          ok = std::abs(v[i] - v[static_cast<std::size_t>(prev)]) >= lambda;
          ++j;
        }
        prev = static_cast<int>(i);
      }
    if (ok) best = std::max(best, j);
  }
  return best;
}

// sin(2 pi xi t) / (2 pi xi t).
inline double sinc_multiplier(double xi, double t) {
  const double a = 2.0 * std::numbers::pi * xi * t;
  return a == 0.0 ? 1.0 : std::sin(a) / a;
}

// q^{-1} sum_{n=1}^{q} e(a n^2 / q) with the phase taken from the exact residue.
inline Complex quadratic_gauss(std::int64_t a, std::int64_t q) {
  Complex s{};
  for (std::int64_t n = 1; n <= q; ++n) s += e(static_cast<double>((a * n % q) * n % q) / static_cast<double>(q));
  return s / static_cast<double>(q);
}

inline std::uint64_t lcm_upto(std::uint64_t n) {
  std::uint64_t l = 1;
  for (std::uint64_t i = 1; i <= n; ++i) l = std::lcm(l, i);
  return l;
}

}  // namespace oracle
