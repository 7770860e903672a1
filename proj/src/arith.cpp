#include "primelab/arith.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "primelab/errors.hpp"

namespace primelab::arith {

SignedPrimeSet::SignedPrimeSet(double bound, std::vector<std::int64_t> primes)
    : bound_(bound), primes_(std::move(primes)) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i] < 2 || static_cast<double>(primes_[i]) > bound_)
      throw DomainError("prime " + std::to_string(primes_[i]) + " outside [2, bound]");
    if (i > 0 && primes_[i] <= primes_[i - 1])
      throw DomainError("prime list must be strictly increasing");
  }
}

std::vector<std::int64_t> SignedPrimeSet::signed_primes(double limit) const {
  auto end = std::upper_bound(primes_.begin(), primes_.end(), limit,
                              [](double v, std::int64_t p) { return v < static_cast<double>(p); });
  std::vector<std::int64_t> out;
  out.reserve(2 * static_cast<std::size_t>(end - primes_.begin()));
  for (auto it = std::make_reverse_iterator(end); it != primes_.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), primes_.begin(), end);
  return out;
}

bool SignedPrimeSet::contains(std::int64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p < 0 ? -p : p);
}

SignedPrimeSet sieve_primes(double bound) {
  if (!(bound >= 2.0)) return SignedPrimeSet(bound < 0 ? 0.0 : bound, {});
  const auto n = static_cast<std::size_t>(std::floor(bound));
  std::vector<char> composite(n + 1, 0);
  std::vector<std::int64_t> primes;
  for (std::size_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::int64_t>(i));
    for (std::size_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return SignedPrimeSet(bound, std::move(primes));
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Distinct prime factors by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    out.push_back(p);
    while (q % p == 0) q /= p;
  }
  if (q > 1) out.push_back(q);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t totient(std::uint64_t q) {
  if (q == 0) throw DomainError("totient: q must be positive");
  std::uint64_t phi = q;
  for (std::uint64_t p : prime_factors(q)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t jordan_totient(std::uint64_t q, std::size_t m) {
  if (q == 0) throw DomainError("jordan_totient: q must be positive");
  Integer j = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(m));
  for (std::uint64_t p : prime_factors(q)) {
    const Integer pm = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(m));
    j = j / pm * (pm - 1);
  }
  if (j > Integer(std::numeric_limits<std::uint64_t>::max()))
    throw SizeLimitError("jordan_totient overflows 64 bits", std::numeric_limits<std::uint64_t>::max());
  return j.convert_to<std::uint64_t>();
}

DenominatorSet::DenominatorSet(std::uint64_t level) : level_(level) {
  if (level == 0) throw DomainError("denominator_set: level must be positive");
  members_.resize(level);
  std::iota(members_.begin(), members_.end(), std::uint64_t{1});
}

Integer DenominatorSet::lcm() const {
  Integer l = 1;
  for (std::uint64_t q : members_) l = boost::multiprecision::lcm(l, Integer(q));
  return l;
}

DenominatorSet denominator_set(std::uint64_t level) { return DenominatorSet(level); }

std::int64_t ReducedFraction::centered(std::size_t i) const {
  std::int64_t r = numerators.at(i) % denominator;
  if (2 * r >= denominator) r -= denominator;
  return r;
}

ReducedFraction ReducedFraction::negated() const {
  std::vector<std::int64_t> neg(numerators.size());
  for (std::size_t i = 0; i < neg.size(); ++i) {
    const std::int64_t r = denominator - numerators[i];
    neg[i] = r == 0 ? denominator : r;
  }
  return make_fraction(std::move(neg), denominator);
}

namespace {

ReducedFraction build_fraction(const std::vector<std::int64_t>& a, std::int64_t q) {
  ReducedFraction f;
  f.numerators = a;
  f.denominator = q;
  f.torus_rep.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    f.torus_rep[i] = static_cast<double>(f.centered(i)) / static_cast<double>(q);
  return f;
}

}  // namespace

ReducedFraction make_fraction(std::vector<std::int64_t> numerators, std::int64_t q) {
  if (q < 1) throw DomainError("fraction denominator must be positive");
  if (numerators.empty()) throw DomainError("fraction needs at least one numerator");
  std::int64_t g = q;
  for (std::int64_t a : numerators) {
    if (a < 1 || a > q) throw DomainError("numerator " + std::to_string(a) + " outside [1, q]");
    g = std::gcd(g, a);
  }
  if (g != 1) throw DomainError("fraction is not reduced (joint gcd " + std::to_string(g) + ")");
  return build_fraction(numerators, q);
}

std::size_t default_fraction_cap() {
  if (const char* env = std::getenv("PRIMELAB_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

Integer fraction_count(std::uint64_t q_lo, std::uint64_t q_hi, std::size_t m) {
  Integer total = 0;
  for (std::uint64_t q = std::max<std::uint64_t>(q_lo, 1); q <= q_hi; ++q) {
    Integer j = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(m));
    for (std::uint64_t p : prime_factors(q)) {
      const Integer pm = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(m));
      j = j / pm * (pm - 1);
    }
    total += j;
  }
  return total;
}

void for_each_fraction(std::uint64_t q_lo, std::uint64_t q_hi, std::size_t m,
                       const std::function<void(const ReducedFraction&)>& visit, std::size_t cap) {
  if (m == 0) throw DomainError("fraction set needs a nonempty index set");
  q_lo = std::max<std::uint64_t>(q_lo, 1);
  if (q_lo > q_hi) return;
  const Integer count = fraction_count(q_lo, q_hi, m);
  if (count > Integer(cap))
    throw SizeLimitError("fraction set of size " + count.str() + " exceeds limit", cap);

  std::vector<std::int64_t> a(m);
  for (std::uint64_t qu = q_lo; qu <= q_hi; ++qu) {
    const auto q = static_cast<std::int64_t>(qu);
    std::fill(a.begin(), a.end(), 1);
    while (true) {
      std::int64_t g = q;
      for (std::int64_t x : a) g = std::gcd(g, x);
      if (g == 1) visit(build_fraction(a, q));
      std::size_t i = m;
      while (i > 0 && a[i - 1] == q) a[--i] = 1;
      if (i == 0) break;
      ++a[i - 1];
    }
  }
}

std::vector<ReducedFraction> fraction_set(std::uint64_t level, std::size_t m, std::size_t cap) {
  if (level == 0) throw DomainError("fraction_set: level must be positive");
  std::vector<ReducedFraction> out;
  for_each_fraction(1, level, m, [&](const ReducedFraction& f) { out.push_back(f); }, cap);
  return out;
}

bool is_dyadic_level(std::uint64_t s, unsigned u) {
  if (u == 0 || s < 2) return false;
  if (s & (s - 1)) return false;
  const auto log2s = static_cast<unsigned>(std::countr_zero(s));
  return log2s % u == 0;
}

std::vector<ReducedFraction> annuli_fraction_set(std::uint64_t s, unsigned u, std::size_t m,
                                                 std::size_t cap) {
  if (!is_dyadic_level(s, u))
    throw DomainError("annuli level " + std::to_string(s) + " is not a power of 2^" + std::to_string(u));
  // P_{<=N} = {1..N}, so the set difference is the denominator range (s/2^u, s].
  const std::uint64_t base = std::uint64_t{1} << u;
  const std::uint64_t lo = s == base ? 1 : s / base + 1;
  std::vector<ReducedFraction> out;
  for_each_fraction(lo, s, m, [&](const ReducedFraction& f) { out.push_back(f); }, cap);
  return out;
}

}  // namespace primelab::arith
