#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace primelab::arith {

using Integer = boost::multiprecision::cpp_int;

// Primes up to a real bound; signed variants are produced on demand.
class SignedPrimeSet {
 public:
  SignedPrimeSet() = default;
  SignedPrimeSet(double bound, std::vector<std::int64_t> primes);

  double bound() const noexcept { return bound_; }
  const std::vector<std::int64_t>& primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }

  // -p_max, ..., -2, 2, ..., p_max restricted to |p| <= limit.
  std::vector<std::int64_t> signed_primes(double limit) const;
  std::vector<std::int64_t> signed_primes() const { return signed_primes(bound_); }

  // Accepts either sign.
  bool contains(std::int64_t p) const;

 private:
  double bound_ = 0.0;
  std::vector<std::int64_t> primes_;
};

// Sieve of Eratosthenes; bound < 2 yields the empty set.
SignedPrimeSet sieve_primes(double bound);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Euler's totient; q = 0 is a DomainError.
std::uint64_t totient(std::uint64_t q);

// Jordan's totient J_m(q) = #{a in [1,q]^m : gcd(a_1, ..., a_m, q) = 1}.
std::uint64_t jordan_totient(std::uint64_t q, std::size_t m);

// P_{<=N}, fixed to {1, ..., N}.
class DenominatorSet {
 public:
  explicit DenominatorSet(std::uint64_t level);

  std::uint64_t level() const noexcept { return level_; }
  const std::vector<std::uint64_t>& members() const noexcept { return members_; }
  bool contains(std::uint64_t q) const noexcept { return q >= 1 && q <= level_; }
  Integer lcm() const;

 private:
  std::uint64_t level_;
  std::vector<std::uint64_t> members_;
};

DenominatorSet denominator_set(std::uint64_t level);

// a/q on the torus with joint coprimality gcd(a_1, ..., a_m, q) = 1.
struct ReducedFraction {
  std::vector<std::int64_t> numerators;  // each in [1, q]
  std::int64_t denominator = 1;
  std::vector<double> torus_rep;  // in [-1/2, 1/2)^m

  std::size_t dimension() const noexcept { return numerators.size(); }

  // a_i mod q lifted to [-q/2, q/2); torus_rep[i] == centered(i) / q.
  std::int64_t centered(std::size_t i) const;

  // -a/q, i.e. numerators q - a_i (with q for a_i == q).
  ReducedFraction negated() const;

  friend bool operator==(const ReducedFraction& a, const ReducedFraction& b) {
    return a.denominator == b.denominator && a.numerators == b.numerators;
  }
  friend bool operator<(const ReducedFraction& a, const ReducedFraction& b) {
    if (a.denominator != b.denominator) return a.denominator < b.denominator;
    return a.numerators < b.numerators;
  }
};

// Validates ranges and joint coprimality.
ReducedFraction make_fraction(std::vector<std::int64_t> numerators, std::int64_t q);

// Cap on enumerated fractions: PRIMELAB_CAP when set, else 10^7.
std::size_t default_fraction_cap();

// |{a/q : q in [q_lo, q_hi]}| in dimension m.
Integer fraction_count(std::uint64_t q_lo, std::uint64_t q_hi, std::size_t m);

// Streams fractions with q_lo <= q <= q_hi ordered by q, then numerators.
void for_each_fraction(std::uint64_t q_lo, std::uint64_t q_hi, std::size_t m,
                       const std::function<void(const ReducedFraction&)>& visit,
                       std::size_t cap = default_fraction_cap());

// Sigma_{<=N} in dimension m = |Gamma|.
std::vector<ReducedFraction> fraction_set(std::uint64_t level, std::size_t m,
                                          std::size_t cap = default_fraction_cap());

// True iff s = 2^{u n} for some n >= 1.
bool is_dyadic_level(std::uint64_t s, unsigned u);

// Sigma_s: Sigma_{<=s} for s = 2^u, else Sigma_{<=s} minus Sigma_{<=s/2^u}.
std::vector<ReducedFraction> annuli_fraction_set(std::uint64_t s, unsigned u, std::size_t m,
                                                 std::size_t cap = default_fraction_cap());

}  // namespace primelab::arith
