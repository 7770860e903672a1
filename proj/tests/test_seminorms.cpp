#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "primelab/errors.hpp"
#include "primelab/rng.hpp"
#include "primelab/seminorms.hpp"

using namespace primelab;
using namespace primelab::seminorms;

namespace {

SampledPath real_path(std::vector<double> v) {
  std::vector<Complex> c(v.begin(), v.end());
  return SampledPath::indexed(std::move(c));
}

std::vector<Complex> random_values(SplitMix64& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(rng.normal(), rng.normal());
  return v;
}

}  // namespace

TEST_SUITE("seminorms") {

TEST_CASE("jump count examples") {
  CHECK(jump_count(real_path({0, 1, 0, 1}), 1.0) == 3);
  CHECK(jump_count(real_path({2, 2, 2, 2}), 0.1) == 0);
  CHECK(jump_count(real_path({0, 0.5, 1}), 1.0) == 1);
  // A greedy scan from the first sample finds nothing here.
  CHECK(jump_count(real_path({0.5, 0, 1}), 1.0) == 1);
}

TEST_CASE("variation examples") {
  CHECK(variation(real_path({0, 1, 0}), 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(variation(real_path({0, 1, 0}), 1.0) == doctest::Approx(2.0));
  CHECK(variation(real_path({1, 2, 4, 7}), 1.0) == doctest::Approx(6.0));
  CHECK(variation(real_path({3}), 2.0) == 0.0);
  CHECK_THROWS_AS(variation(real_path({0, 1}), 0.5), DomainError);
}

TEST_CASE("oscillation examples") {
  const SampledPath p({1.0, 2.0}, {0.0, 1.0});
  const double I[] = {1.0, 3.0};
  CHECK(oscillation(p, I, 1, 2.0) == doctest::Approx(1.0));
  const double one[] = {1.0, 1.5};
  CHECK(oscillation(p, one, 1, 2.0) == 0.0);
  CHECK(oscillation(real_path({4, 4, 4, 4}), std::vector<double>{0, 2, 4}, 2, 2.0) == 0.0);
}

TEST_CASE("multi oscillation examples") {
  const GridField f({{0.0, 1.0}, {0.0, 1.0}}, {0.0, 0.0, 0.0, 1.0});
  const BoxSequence I({{0.0, 0.0}, {2.0, 2.0}});
  CHECK(multi_oscillation(f, I, 1, 2.0) == doctest::Approx(1.0));
  const GridField c({{0.0, 1.0}, {0.0, 1.0, 2.0}}, std::vector<Complex>(6, Complex(1, 1)));
  CHECK(multi_oscillation(c, BoxSequence({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}}), 2, 2.0) == 0.0);
}

TEST_CASE("oracle examples and caps") {
  CHECK(oracle_variation(real_path({0, 1, 0}), 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(oracle_variation(real_path({1}), 2.0) == 0.0);
  CHECK(oracle_jump(real_path({1}), 1.0) == 0);
  CHECK_THROWS_AS(oracle_variation(real_path(std::vector<double>(16, 0.0)), 2.0), SizeLimitError);
  CHECK_THROWS_AS(oracle_jump(real_path(std::vector<double>(13, 0.0)), 1.0), SizeLimitError);
}

TEST_CASE("sign paths of length 10") {
  for (unsigned mask = 0; mask < 1024; ++mask) {
    std::vector<Complex> v(10);
    for (int i = 0; i < 10; ++i) v[i] = (mask >> i & 1) ? 1.0 : -1.0;
    const auto p = SampledPath::indexed(v);
    CHECK(jump_count(p, 1.0) == oracle_jump(p, 1.0));
    CHECK(jump_count(p, 1.0) == oracle::jumps(v, 1.0));
  }
}

TEST_CASE("exhaustive ternary paths") {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Complex> v(n);
      std::size_t c = code;
      for (auto& x : v) {
        x = double(c % 3) - 1.0;
        c /= 3;
      }
      const auto p = SampledPath::indexed(v);
      for (double r : {1.0, 2.0, 3.0}) CHECK(variation(p, r) == doctest::Approx(oracle::variation(v, r)).epsilon(1e-12));
      for (double lambda : {0.5, 1.0, 2.0}) CHECK(jump_count(p, lambda) == oracle::jumps(v, lambda));
    }
  }
}

TEST_CASE("random paths against the oracles") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 12));
    const auto v = random_values(rng, n);
    const auto p = SampledPath::indexed(v);
    const double r = rng.uniform(1.0, 4.0), lambda = rng.uniform(0.2, 3.0);
    CHECK(variation(p, r) == doctest::Approx(oracle_variation(p, r)).epsilon(1e-12));
    CHECK(jump_count(p, lambda) == oracle_jump(p, lambda));
  }
}

TEST_CASE("monotone in r and the jump bridge") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = SampledPath::indexed(random_values(rng, static_cast<std::size_t>(rng.integer(2, 40))));
    double prev = variation(p, 1.0);
    for (double r : {1.5, 2.0, 3.0, 6.0}) {
      const double v = variation(p, r);
      CHECK(v <= prev + kInequalityTol);
      prev = v;
      for (double lambda : {0.3, 1.0, 2.5})
        CHECK(lambda * std::pow(double(jump_count(p, lambda)), 1.0 / r) <= v + kInequalityTol);
    }
  }
}

TEST_CASE("oscillation below variation and M = 1 reduction") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 30;
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = double(i) + rng.uniform(0.0, 0.5);
    const auto values = random_values(rng, n);
    const SampledPath p(times, values);
    std::vector<double> I{0.0};
    while (I.back() < 31.0) I.push_back(I.back() + rng.uniform(0.5, 6.0));
    const std::size_t N = I.size() - 1;
    const double o = oscillation(p, I, N, 2.0);
    CHECK(o <= variation(p, 2.0) + kInequalityTol);

    std::vector<std::vector<double>> boxes;
    for (double x : I) boxes.push_back({x});
    const GridField field({times}, values);
    CHECK(multi_oscillation(field, BoxSequence(boxes), N, 2.0) == o);
  }
}

TEST_CASE("Rademacher-Menshov") {
  const Complex a[] = {1.0, 0.0};
  const auto rep = rademacher_menshov_check(a, 1, 1);
  CHECK(rep.lhs == 1.0);
  CHECK(rep.rhs >= 1.0);
  CHECK(rep.pass);

  const std::vector<Complex> c(13, Complex(0.5, -2.0));
  const auto rc = rademacher_menshov_check(c, 4, 4);
  CHECK(rc.lhs == doctest::Approx(std::abs(c[0])));
  CHECK(rc.rhs == doctest::Approx(std::abs(c[0])));
  CHECK(rc.pass);

  CHECK_THROWS_AS(rademacher_menshov_check(a, 2, 1), DomainError);

  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<unsigned>(rng.integer(1, 8));
    const std::uint64_t top = std::uint64_t{1} << m;
    const auto k = static_cast<std::uint64_t>(rng.integer(0, static_cast<std::int64_t>(top) - 1));
    const auto v = random_values(rng, top - k + 1);
    CHECK(rademacher_menshov_check(v, k, m).pass);
    CHECK(rademacher_menshov_check(v, k, m, false).pass);
  }
}

TEST_CASE("path csv round trip") {
  const SampledPath p({0.5, 1.25, 3.0}, {Complex(1, 2), Complex(-0.1, 0), Complex(1e-300, 7)});
  const auto q = SampledPath::from_csv(p.to_csv());
  CHECK(q.times() == p.times());
  CHECK(q.values() == p.values());
  CHECK_THROWS(SampledPath({1.0, 1.0}, {0.0, 0.0}));
}

}
