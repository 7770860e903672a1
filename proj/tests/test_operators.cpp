#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "primelab/errors.hpp"
#include "primelab/operators.hpp"
#include "primelab/rng.hpp"

using namespace primelab;
using namespace primelab::ops;
using region::ConvexRegion;
using region::Split;

namespace {

OperatorConfig linear_config() {
  return {poly::parse_polynomial_map("n"), ConvexRegion::ball(1), Split{1, 0}, std::nullopt};
}

OperatorConfig config(const char* poly, Split split, std::optional<kernel::CZKernel> K = std::nullopt) {
  auto P = poly::parse_polynomial_map(poly, split.total());
  const auto k = split.total();
  return {std::move(P), ConvexRegion::ball(k), split, std::move(K)};
}

LatticeFunction random_function(SplitMix64& rng, std::size_t d, std::int64_t R, bool nonneg) {
  LatticeFunction f(d);
  for (int i = 0; i < 12; ++i) {
    Point x(d);
    for (auto& c : x) c = rng.integer(-R, R);
    if (nonneg)
      f.set(x, rng.uniform());
    else
      f.set(x, Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  }
  return f;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("chebyshev examples") {
  CHECK(chebyshev(ConvexRegion::ball(1), {1, 0}, 2.5) == 5.0);
  CHECK(chebyshev(ConvexRegion::ball(1), {0, 1}, 10.0) ==
        doctest::Approx(2.0 * (std::log(2.0) + std::log(3.0) + std::log(5.0) + std::log(7.0))));
  CHECK(chebyshev(ConvexRegion::ball(1), {0, 1}, 10.0) == doctest::Approx(2.0 * std::log(210.0)).epsilon(1e-14));
  CHECK_THROWS_AS(chebyshev(ConvexRegion::ball(1), {0, 1}, 2.0), DegenerateNormalization);
}

TEST_CASE("chebyshev matches direct summation") {
  for (double t : {3.0, 7.5, 20.0, 41.0}) {
    double s = 0.0;
    for (std::int64_t p : oracle::primes_upto(static_cast<std::int64_t>(std::ceil(t)) - 1))
      if (p < t) s += 2.0 * std::log(double(p));
    CHECK(chebyshev(ConvexRegion::ball(1), {0, 1}, t) == doctest::Approx(s).epsilon(1e-13));
  }
  // Mixed split: every n with |n| < sqrt(t^2 - p^2) for each admissible p.
  double s = 0.0;
  const double t = 9.0;
  for (std::int64_t p : oracle::primes_upto(8))
    for (std::int64_t n = -9; n <= 9; ++n)
      if (double(n * n + p * p) < t * t) s += 2.0 * std::log(double(p));
  CHECK(chebyshev(ConvexRegion::ball(2), {1, 1}, t) == doctest::Approx(s).epsilon(1e-13));
}

TEST_CASE("average examples") {
  const auto cfg = linear_config();
  const auto g = average(cfg, 2.0, LatticeFunction::delta(1));
  CHECK(g.support_size() == 3);
  for (std::int64_t x : {-1, 0, 1}) CHECK(g(Point{x}).real() == doctest::Approx(1.0 / 3.0));
  CHECK(g(Point{2}) == Complex(0.0));
  CHECK(g.norm(1) == doctest::Approx(1.0));

  LatticeFunction c(1);
  for (std::int64_t x = -50; x <= 50; ++x) c.set({x}, 2.5);
  const auto ac = average(config("n^2", {1, 0}), 4.0, c);
  CHECK(ac(Point{0}).real() == doctest::Approx(2.5));
  CHECK(ac(Point{10}).real() == doctest::Approx(2.5));
}

TEST_CASE("cotlar examples") {
  const auto cfg = config("n", {1, 0}, kernel::builtin_kernel("hilbert", 1));
  const auto h = cotlar(cfg, 2.0, LatticeFunction::delta(1));
  CHECK(h(Point{1}).real() == 1.0);
  CHECK(h(Point{-1}).real() == -1.0);
  CHECK(h(Point{0}) == Complex(0.0));
  CHECK(cotlar(cfg, 3.0, LatticeFunction(1)).support_size() == 0);
  CHECK(cotlar(cfg, 0.5, LatticeFunction::delta(1)).support_size() == 0);
  CHECK_THROWS_AS(average(cfg, 2.0, LatticeFunction::delta(1)), ConfigError);
  CHECK_THROWS_AS(cotlar(linear_config(), 2.0, LatticeFunction::delta(1)), ConfigError);
}

TEST_CASE("cotlar on primes") {
  // P(p) = p: H_t delta_0(p) = K(p) log|p|.
  const auto cfg = config("n", {0, 1}, kernel::builtin_kernel("hilbert", 1));
  const auto h = cotlar(cfg, 8.0, LatticeFunction::delta(1));
  for (std::int64_t p : {2, 3, 5, 7}) {
    CHECK(h(Point{p}).real() == doctest::Approx(std::log(double(p)) / double(p)));
    CHECK(h(Point{-p}).real() == doctest::Approx(-std::log(double(p)) / double(p)));
  }
  CHECK(h.support_size() == 8);
}

TEST_CASE("composed average examples") {
  const BlockConfig a{linear_config(), {0}}, b{linear_config(), {1}};
  const std::vector<BlockConfig> blocks{a, b};
  const double times[] = {2.0, 2.0};
  const auto g = composed_average(blocks, times, LatticeFunction::delta(2));
  CHECK(g.support_size() == 9);
  for (const auto& [x, v] : g.support()) CHECK(v.real() == doctest::Approx(1.0 / 9.0));

  const std::vector<BlockConfig> single{{linear_config(), {0}}};
  const double t1[] = {3.5};
  CHECK(composed_average(single, t1, LatticeFunction::delta(1)) == average(linear_config(), 3.5, LatticeFunction::delta(1)));

  const std::vector<BlockConfig> overlap{a, {linear_config(), {0}}};
  CHECK_THROWS_AS(composed_average(overlap, times, LatticeFunction::delta(2)), ConfigError);
}

TEST_CASE("composition order and sequential agreement") {
  SplitMix64 rng(5);
  const BlockConfig a{config("n^2", {1, 0}), {1}}, b{config("n", {0, 1}), {0}};
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_function(rng, 2, 6, false);
    const double ts[] = {rng.uniform(2, 6), rng.uniform(3, 9)};
    const double swapped[] = {ts[1], ts[0]};
    const std::vector<BlockConfig> ab{a, b}, ba{b, a};
    const auto x = composed_average(ab, ts, f);
    CHECK(x == composed_average(ba, swapped, f));
    const auto y = sequential_composition(ab, ts, f);
    for (const auto& [pt, v] : x.support()) CHECK(std::abs(v - y(pt)) <= 1e-15);
  }
}

TEST_CASE("positivity and contraction") {
  SplitMix64 rng(17);
  for (const char* poly : {"n", "n^2", "2*n^3 - n"})
    for (Split split : {Split{1, 0}, Split{0, 1}}) {
      const auto cfg = config(poly, split);
      for (int trial = 0; trial < 5; ++trial) {
        const double t = rng.uniform(3.0, 12.0);
        const auto f = random_function(rng, 1, 20, true);
        const auto g = average(cfg, t, f);
        for (const auto& [x, v] : g.support()) {
          CHECK(v.real() >= 0.0);
          CHECK(v.imag() == 0.0);
        }
        CHECK(g.sup_norm() <= f.sup_norm() * (1 + 1e-14));
        const auto h = random_function(rng, 1, 20, false);
        const auto gh = average(cfg, t, h);
        for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(gh.norm(p) <= h.norm(p) * (1 + 1e-12));
      }
    }
}

TEST_CASE("pointwise decay") {
  const auto cfg = config("n^2", {1, 0});
  double prev = 1.0;
  for (double t : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto g = average(cfg, t, LatticeFunction::delta(1));
    const double theta = chebyshev(cfg.region, cfg.split, t);
    CHECK(g.sup_norm() <= 2.0 / theta + 1e-15);
    CHECK(g.sup_norm() <= prev);
    prev = g.sup_norm();
  }
}

TEST_CASE("sup functional") {
  const auto cfg = linear_config();
  const std::vector<LatticeFunction> fs{LatticeFunction::delta(1)};
  const TimeGrid one({2.0});
  CHECK(sup_functional(cfg, one, fs, 2.0) == 0.0);
  CHECK(sup_functional(cfg, one, fs, 2.0, SupVariant::Maximal) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(sup_functional(cfg, one, fs, 1.0), DomainError);

  SplitMix64 rng(9);
  std::vector<LatticeFunction> many{random_function(rng, 1, 10, false), random_function(rng, 1, 10, false)};
  const TimeGrid grid({2.0, 4.0, 8.0});
  const double base = sup_functional(cfg, grid, many, 3.0);
  for (auto& f : many) f *= Complex(0.0, -2.5);
  CHECK(sup_functional(cfg, grid, many, 3.0) == doctest::Approx(2.5 * base));
}

TEST_CASE("time grids") {
  CHECK(TimeGrid::dyadic(3).values() == std::vector<double>{2, 4, 8});
  CHECK(TimeGrid::generator_value(0, 0.5) == 1);
  CHECK(TimeGrid::generator_value(4, 0.5) == 4);
  CHECK(TimeGrid::generator_value(9, 0.5) == 8);
  CHECK(TimeGrid::generator_value(5, 1.0) == 32);
  const auto g = TimeGrid::subexponential(10, 0.5);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.values()[i] > g.values()[i - 1]);
  CHECK_THROWS_AS(TimeGrid({2.0, 2.0}), DomainError);
  CHECK_THROWS_AS(TimeGrid({}), DomainError);
}

TEST_CASE("serialization round trip") {
  SplitMix64 rng(2);
  const auto f = random_function(rng, 3, 5, false);
  const auto text = f.serialize();
  CHECK(LatticeFunction::parse(text, 3) == f);
  CHECK_THROWS_AS(LatticeFunction::parse("1 2  0.5 0\n1 2  0.5 0\n", 2), ConfigError);
  CHECK_THROWS_AS(LatticeFunction::parse("1 2  0.5\n", 2), ConfigError);
}

TEST_CASE("configuration validation") {
  OperatorConfig bad{poly::parse_polynomial_map("n1 + n2"), ConvexRegion::ball(2), Split{1, 0}, std::nullopt};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}
