#include <doctest.h>

#include <cmath>

#include "primelab/errors.hpp"
#include "primelab/kernel.hpp"

using namespace primelab;
using namespace primelab::kernel;
using region::ConvexRegion;

TEST_SUITE("kernel") {

TEST_CASE("built-in values") {
  const auto H = builtin_kernel("hilbert", 1);
  const double two[] = {2.0};
  CHECK(H(two).real() == 0.5);
  const auto R1 = builtin_kernel("riesz_1", 2);
  const double e1[] = {1.0, 0.0}, v[] = {3.0, 4.0};
  CHECK(R1(e1).real() == doctest::Approx(1.0));
  CHECK(R1(v).real() == doctest::Approx(0.024).epsilon(1e-14));
  const auto R2 = builtin_kernel("riesz_2", 3);
  const double w[] = {1.0, 2.0, 2.0};
  CHECK(R2(w).real() == doctest::Approx(2.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(builtin_kernel("nope", 1), DomainError);
  CHECK_THROWS_AS(builtin_kernel("riesz_3", 2), DomainError);
  const auto H = builtin_kernel("hilbert", 1);
  const double zero[] = {0.0};
  CHECK_THROWS_AS(H(zero), DomainError);
  const double pair[] = {1.0, 1.0};
  CHECK_THROWS_AS(H(pair), DomainError);
  CHECK_THROWS_AS(check_cancellation(H, ConvexRegion::ball(1), 2.0, 1.0, 1e-8), DomainError);
}

TEST_CASE("odd kernels cancel") {
  struct Case {
    const char* name;
    std::size_t k;
  };
  for (const auto& [name, k] : {Case{"hilbert", 1}, Case{"riesz_1", 2}, Case{"riesz_2", 2}, Case{"odd_homogeneous", 2},
                                Case{"riesz_1", 3}}) {
    for (const auto& [r, R] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{0.1, 10.0}}) {
      const auto K = builtin_kernel(name, k);
      const auto rep = check_cancellation(K, ConvexRegion::ball(k), r, R, 1e-8);
      CHECK(rep.pass);
      CHECK(std::abs(rep.integral) <= 1e-8);
    }
  }
}

TEST_CASE("cancellation without the symmetry shortcut") {
  // Symmetric ellipse that does not declare itself symmetric, so the
  // quadrature path runs.
  const auto omega = ConvexRegion::custom(
      2, [](std::span<const double> z) { return z[0] * z[0] / 0.64 + z[1] * z[1] < 1.0; }, 0.8, false);
  const auto rep = check_cancellation(builtin_kernel("riesz_1", 2), omega, 1.0, 3.0, 1e-8);
  CHECK_FALSE(rep.short_circuited);
  CHECK(rep.pass);
}

TEST_CASE("even negative control") {
  const auto rep = check_cancellation(builtin_kernel("even_control", 1), ConvexRegion::ball(1), 1.0, 2.0, 1e-8);
  CHECK_FALSE(rep.pass);
  CHECK(std::abs(rep.integral.real() - 2.0 * std::log(2.0)) <= 1e-6);
  CHECK(std::abs(rep.integral.imag()) <= 1e-12);
  // In k = 2 the integral is 2 pi log(R/r).
  const auto rep2 = check_cancellation(builtin_kernel("even_control", 2), ConvexRegion::ball(2), 1.0, 3.0, 1e-8);
  CHECK(std::abs(rep2.integral.real() - 2.0 * std::numbers::pi * std::log(3.0)) <= 1e-6);
}

TEST_CASE("size and Lipschitz ratios") {
  const auto h = check_size_and_lipschitz(builtin_kernel("hilbert", 1), 10000, 1);
  CHECK(h.max_size_ratio == doctest::Approx(1.0));
  CHECK(h.max_lipschitz_ratio <= 2.0 + 1e-12);
  CHECK(h.samples == 10000);
  for (const auto& [name, k] : {std::pair{"riesz_1", std::size_t{2}}, std::pair{"riesz_2", std::size_t{3}},
                                std::pair{"odd_homogeneous", std::size_t{2}}}) {
    const auto K = builtin_kernel(name, k);
    const auto rep = check_size_and_lipschitz(K, 10000, 7);
    CHECK(rep.max_size_ratio <= 2.0 * K.size_constant());
    CHECK(rep.max_lipschitz_ratio <= 2.0 * K.lipschitz_constant());
  }
  CHECK(builtin_kernel("riesz_1", 2).size_constant() >= 1.0);
}

TEST_CASE("checker is deterministic in the seed") {
  const auto K = builtin_kernel("riesz_1", 2);
  const auto a = check_size_and_lipschitz(K, 500, 42);
  const auto b = check_size_and_lipschitz(K, 500, 42);
  CHECK(a.max_size_ratio == b.max_size_ratio);
  CHECK(a.max_lipschitz_ratio == b.max_lipschitz_ratio);
}

TEST_CASE("custom odd homogeneous kernel") {
  const auto K = odd_homogeneous_kernel(
      2, [](std::span<const double> th) { return Complex(th[0] * th[1] * th[1], 0.0); }, 1.0, 10.0);
  const double x[] = {2.0, 0.0};
  CHECK(std::abs(K(x)) == doctest::Approx(0.0));
  const double y[] = {0.0, -1.0}, z[] = {1.0, 1.0};
  CHECK(std::abs(K(y)) == doctest::Approx(0.0));
  CHECK(K(z).real() == doctest::Approx(std::pow(0.5, 1.5) / 2.0));
  CHECK(check_cancellation(K, ConvexRegion::box(2), 0.5, 2.0, 1e-8).pass);
}

}
