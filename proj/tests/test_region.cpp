#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "primelab/errors.hpp"
#include "primelab/region.hpp"

using namespace primelab;
using namespace primelab::region;

namespace {

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

// Brute force over a box, membership by the region predicate only.
std::set<Point> brute(const ConvexRegion& omega, double t, Split split) {
  std::set<Point> out;
  const std::size_t k = split.total();
  const auto R = static_cast<std::int64_t>(std::ceil(t));
  Point x(k, -R);
  while (true) {
    bool ok = true;
    for (std::size_t i = split.integer_dims; i < k; ++i) ok = ok && oracle::is_prime(std::abs(x[i]));
    std::vector<double> y(x.begin(), x.end());
    if (ok && omega.contains(t, y)) out.insert(x);
    std::size_t i = 0;
    while (i < k && ++x[i] > R) x[i++] = -R;
    if (i == k) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("region") {

TEST_CASE("membership") {
  const auto ball = ConvexRegion::ball(1);
  const double a[] = {1.5}, b[] = {2.0};
  CHECK(contains(ball, 2.0, a));
  CHECK_FALSE(contains(ball, 2.0, b));
  const auto box = ConvexRegion::box(2);
  const double c[] = {2.0, 2.0};
  // (2,2)/4 = (0.5, 0.5) against half-side 1/sqrt(2).
  CHECK(contains(box, 4.0, c) == (0.5 < 1.0 / std::sqrt(2.0)));
  const double d[] = {1.0, 2.0};
  CHECK_THROWS_AS(contains(ball, 2.0, d), DomainError);
}

TEST_CASE("lattice point examples") {
  const auto primes = arith::sieve_primes(100);
  CHECK(lattice_points(ConvexRegion::ball(1), 2.5, {1, 0}, primes) == std::vector<Point>{{-2}, {-1}, {0}, {1}, {2}});
  CHECK(lattice_points(ConvexRegion::ball(1), 10, {0, 1}, primes) ==
        std::vector<Point>{{-7}, {-5}, {-3}, {-2}, {2}, {3}, {5}, {7}});
  const auto mixed = as_set(lattice_points(ConvexRegion::ball(2), 3, {1, 1}, primes));
  CHECK(mixed == std::set<Point>{{0, -2}, {0, 2}, {-1, -2}, {-1, 2}, {1, -2}, {1, 2}, {-2, -2}, {-2, 2}, {2, -2}, {2, 2}});
}

TEST_CASE("insufficient sieve") {
  CHECK_THROWS_AS(lattice_points(ConvexRegion::ball(1), 50, {0, 1}, arith::sieve_primes(10)), InsufficientSieve);
}

TEST_CASE("enumeration matches brute force") {
  const auto primes = arith::sieve_primes(64);
  const std::vector<std::pair<ConvexRegion, Split>> cases = {
      {ConvexRegion::ball(2), {2, 0}},
      {ConvexRegion::ball(2), {1, 1}},
      {ConvexRegion::box(2), {2, 0}},
      {ConvexRegion::ellipsoid({1.0, 0.4}), {2, 0}},
      {ConvexRegion::half_spaces(2, {{1.0, 0.0}, {0.0, -1.0}}, {0.3, 0.5}), {1, 1}},
      {ConvexRegion::ball(3), {2, 1}},
  };
  for (const auto& [omega, split] : cases)
    for (double t : {1.0, 2.5, 4.0, 7.3}) CHECK(as_set(lattice_points(omega, t, split, primes)) == brute(omega, t, split));
}

TEST_CASE("dilation monotonicity and sandwich") {
  const auto primes = arith::sieve_primes(64);
  for (const auto& omega : {ConvexRegion::ball(2), ConvexRegion::box(2), ConvexRegion::ellipsoid({0.5, 1.0})}) {
    std::set<Point> prev;
    for (double t = 1.0; t <= 12.0; t += 0.75) {
      const auto cur = as_set(lattice_points(omega, t, {2, 0}, primes));
      for (const auto& x : prev) CHECK(cur.count(x) == 1);
      for (const auto& x : cur) CHECK(std::hypot(double(x[0]), double(x[1])) < t);
      for (const auto& x : brute(ConvexRegion::ball(2), omega.inner_radius() * t, {2, 0})) CHECK(cur.count(x) == 1);
      prev = cur;
    }
    CHECK(omega.verify_sandwich(1000, 5).pass);
  }
}

TEST_CASE("annulus points") {
  const auto primes = arith::sieve_primes(100);
  const auto ball = ConvexRegion::ball(1);
  CHECK(annulus_points(RegionAnnulus(ball, 1.5, 2.5), {1, 0}, primes) == std::vector<Point>{{-2}, {2}});
  CHECK(annulus_points(RegionAnnulus(ball, 2.5, 2.9), {1, 0}, primes).empty());
  CHECK(as_set(annulus_points(RegionAnnulus(ball, 4, 10), {0, 1}, primes)) == std::set<Point>{{-7}, {-5}, {5}, {7}});
  CHECK_THROWS_AS(RegionAnnulus(ball, 3, 2), DomainError);
}

TEST_CASE("annulus equals set difference") {
  const auto primes = arith::sieve_primes(64);
  const auto omega = ConvexRegion::ball(2);
  for (double r : {1.0, 2.2, 3.0})
    for (double R : {3.5, 5.0, 8.0}) {
      auto diff = as_set(lattice_points(omega, R, {1, 1}, primes));
      for (const auto& x : lattice_points(omega, r, {1, 1}, primes)) diff.erase(x);
      CHECK(as_set(annulus_points(RegionAnnulus(omega, r, R), {1, 1}, primes)) == diff);
    }
}

TEST_CASE("region validation") {
  CHECK_THROWS_AS(ConvexRegion::ellipsoid({1.2}), DomainError);
  CHECK_THROWS_AS(ConvexRegion::half_spaces(2, {{1.0, 0.0}}, {-0.1}), DomainError);
  CHECK(ConvexRegion::ball(3).volume() == doctest::Approx(4.0 * std::numbers::pi / 3.0));
}

}
