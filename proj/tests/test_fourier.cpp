#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "primelab/errors.hpp"
#include "primelab/fourier.hpp"
#include "primelab/rng.hpp"

using namespace primelab;
using namespace primelab::fourier;
using region::ConvexRegion;
using region::Split;

namespace {

ops::OperatorConfig config(const char* poly, Split split, std::optional<kernel::CZKernel> K = std::nullopt) {
  return {poly::parse_polynomial_map(poly, split.total()), ConvexRegion::ball(split.total()), split, std::move(K)};
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("e reduces the argument") {
  CHECK(std::abs(e(0.25) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(e(1e12 + 0.5) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(e(-0.75) - oracle::e(0.25)) < 1e-15);
}

TEST_CASE("discrete multiplier examples") {
  const auto cfg = config("n", {1, 0});
  const double zero[] = {0.0}, half[] = {0.5};
  CHECK(discrete_multiplier(cfg, 7.3, zero) == Complex(1.0));
  CHECK(std::abs(discrete_multiplier(cfg, 2.0, half) - Complex(-1.0 / 3.0)) < 1e-15);
  const auto H = config("n", {1, 0}, kernel::builtin_kernel("hilbert", 1));
  CHECK(std::abs(discrete_multiplier(H, 20.0, zero)) < 1e-14);
  const auto Hp = config("n^3", {0, 1}, kernel::builtin_kernel("hilbert", 1));
  CHECK(std::abs(discrete_multiplier(Hp, 30.0, zero)) < 1e-14);
}

TEST_CASE("multiplier bounds, symmetry and order independence") {
  SplitMix64 rng(8);
  for (const auto& cfg : {config("n^2", {1, 0}), config("n^2 + 3*n", {0, 1}), config("n1*n2 + n2^2", {1, 1})}) {
    for (int i = 0; i < 20; ++i) {
      const double xi[] = {rng.uniform(-0.5, 0.5)};
      const double t = rng.uniform(5.0, 40.0);
      const auto m = discrete_multiplier(cfg, t, xi);
      CHECK(std::abs(m) <= 1.0 + 1e-14);
      const double neg[] = {-xi[0]};
      CHECK(std::abs(discrete_multiplier(cfg, t, neg) - std::conj(m)) < 1e-13);
      const auto f = Frequency::real({xi[0]});
      CHECK(std::abs(discrete_multiplier_shuffled(cfg, t, f, rng.next()) - m) < 1e-9);
    }
  }
}

TEST_CASE("rational frequencies use exact residues") {
  const auto cfg = config("n^3", {1, 0});
  const auto frac = arith::make_fraction({2}, 7);
  const auto exact = discrete_multiplier(cfg, 200.0, Frequency::rational(frac));
  Complex s{};
  for (std::int64_t n = -199; n <= 199; ++n) s += oracle::e(double(((2 * n * n % 7) * n % 7 + 7) % 7) / 7.0);
  CHECK(std::abs(exact - s / 399.0) < 1e-13);
}

TEST_CASE("continuous multiplier: sinc oracle") {
  const auto cfg = config("n", {1, 0});
  const double zero[] = {0.0}, quarter[] = {0.25};
  CHECK(std::abs(continuous_multiplier(cfg, 3.0, zero).value - Complex(1.0)) < 1e-12);
  CHECK(std::abs(continuous_multiplier(cfg, 2.0, quarter).value) < 1e-10);
  SplitMix64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const double xi[] = {rng.uniform(-0.5, 0.5)};
    const double t = rng.uniform(1.0, 50.0);
    const auto est = continuous_multiplier(cfg, t, xi);
    CHECK(std::abs(est.value - Complex(oracle::sinc_multiplier(xi[0], t))) <= 1e-8);
  }
}

TEST_CASE("continuous multiplier: two dimensions and principal values") {
  // Disc with Q(y) = y_1: Phi = J_1(2 pi xi t) / (pi xi t).
  const ops::OperatorConfig disc{poly::parse_polynomial_map("n1", 2), ConvexRegion::ball(2), Split{2, 0}, std::nullopt};
  const double xi[] = {0.1};
  const double x = 2.0 * std::numbers::pi * 0.1 * 3.0;
  CHECK(std::abs(continuous_multiplier(disc, 3.0, xi).value.real() - 2.0 * std::cyl_bessel_j(1.0, x) / x) < 1e-8);

  const auto H = config("n", {1, 0}, kernel::builtin_kernel("hilbert", 1));
  const double zero[] = {0.0};
  CHECK(std::abs(continuous_multiplier(H, 10.0, zero).value) < 1e-12);
  // p.v. of e(xi y)/y over |y| < t is 2i Si(2 pi xi t).
  const double q[] = {0.05};
  const auto psi = continuous_multiplier(H, 10.0, q);
  double si = 0.0;
  const double X = 2.0 * std::numbers::pi * 0.05 * 10.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) * X / n;
    si += std::sin(u) / u * X / n;
  }
  CHECK(std::abs(psi.value - Complex(0.0, 2.0 * si)) < 1e-7);
}

TEST_CASE("gauss sums") {
  const auto lin = poly::parse_polynomial_map("n");
  CHECK(gauss_sum(arith::make_fraction({1}, 1), lin, {1, 0}).value == Complex(1.0));
  CHECK(std::abs(gauss_sum(arith::make_fraction({1}, 3), lin, {1, 0}).value) < 1e-15);
  CHECK(std::abs(gauss_sum(arith::make_fraction({1}, 3), lin, {0, 1}).value - Complex(-0.5)) < 1e-15);

  const auto sq = poly::parse_polynomial_map("n^2");
  for (std::int64_t q : oracle::primes_upto(199)) {
    if (q == 2) continue;
    for (std::int64_t a = 1; a < q; a += 5) {
      const auto f = arith::make_fraction({a}, q);
      const auto G = gauss_sum(f, sq, {1, 0}).value;
      CHECK(std::abs(std::abs(G) - 1.0 / std::sqrt(double(q))) < 1e-10);
      CHECK(std::abs(G - oracle::quadratic_gauss(a, q)) < 1e-12);
      CHECK(std::abs(gauss_sum(f.negated(), sq, {1, 0}).value - std::conj(G)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_sum(arith::make_fraction({1}, 1000), poly::parse_polynomial_map("n1*n2"), {2, 0}, 1000),
                  SizeLimitError);
}

TEST_CASE("gauss sums over the canonical set") {
  const auto gamma = poly::gamma_set(1, 2);
  const auto f = arith::make_fraction({1, 2}, 5);
  const auto G = gauss_sum(f, {1, 0}, gamma).value;
  Complex s{};
  for (std::int64_t n = 1; n <= 5; ++n) s += oracle::e(double((n + 2 * n * n) % 5) / 5.0);
  CHECK(std::abs(G - s / 5.0) < 1e-14);
  CHECK(std::abs(G) <= 1.0 + 1e-15);
}

TEST_CASE("gauss decay") {
  const auto rep = gauss_decay_experiment(poly::parse_polynomial_map("n^2"), {1, 0}, 200, 0.4);
  CHECK(rep.verdict("delta_min").value());
  CHECK(rep.fit_value("delta").value() >= 0.4);
  CHECK(rep.rows.front()[1] == doctest::Approx(1.0));
}

TEST_CASE("weyl sums") {
  const auto cfg = config("n^2", {1, 0});
  const double Ns[] = {100, 1000, 10000};
  const std::vector<WeylArc> fib{fibonacci_arc(100), fibonacci_arc(1000), fibonacci_arc(10000)};
  const auto rep = weyl_decay_experiment(cfg, Ns, fib);
  CHECK(rep.rows.size() == 3);
  CHECK(rep.verdict("decay_trend").value());

  const std::vector<WeylArc> small{{1, 2, 0.0}};
  const double big[] = {10000};
  const auto skipped = weyl_decay_experiment(cfg, big, small);
  CHECK(skipped.rows.empty());
  CHECK_FALSE(skipped.notes.empty());

  const auto a = fibonacci_arc(100);
  CHECK(a.q == 89);
  CHECK(a.a == 55);
}

TEST_CASE("bump and cutoff") {
  const double zero[] = {0.0, 0.0};
  CHECK(bump(zero) == 1.0);
  const double edge[] = {1.0 / 64.0, 0.0}, far[] = {0.0, -1.0 / 32.0}, mid[] = {3.0 / 128.0, 0.0};
  CHECK(bump(edge) == 1.0);
  CHECK(bump(far) == 0.0);
  CHECK(bump(mid) > 0.0);
  CHECK(bump(mid) < 1.0);
  const double plateau[] = {1.0 / 64.0, -1.0 / 64.0};
  CHECK(bump(plateau) == 1.0);
  double prev = 1.0;
  for (double x = 0.0; x <= 0.04; x += 0.001) {
    const double p[] = {x, 0.0};
    CHECK(bump(p) <= prev);
    CHECK(bump(p) >= 0.0);
    prev = bump(p);
  }

  const CutoffProfile prof{poly::DegreeMatrix(poly::gamma_set(1, 2)), 4.0, 0.01};
  CHECK(cutoff(prof, zero) == 1.0);
  const double out[] = {0.1, 0.0};
  CHECK(cutoff(prof, out) == 0.0);
}

TEST_CASE("major arc approximant") {
  const auto cfg = config("n", {0, 1});
  ApproximantOptions opts;
  const double away[] = {0.1};
  CHECK(major_arc_approximant(cfg, 4, 4, away, opts).v == Complex(0.0));
  const double near[] = {1.0 / 3.0 + 1e-3};
  const auto val = major_arc_approximant(cfg, 4, 4, near, opts);
  CHECK(val.active_fractions == 1);
  CHECK(std::abs(val.v - (-0.5) * val.lambda) < 1e-15);
}

TEST_CASE("approximation error") {
  const double N[] = {100, 1000};
  const double zero[] = {0.0};
  const auto trivial = approximation_error_experiment(config("n^2", {1, 0}), arith::make_fraction({1}, 1), zero, N);
  for (const auto& row : trivial.rows) CHECK(row[3] <= 1e-12);

  const double theta[] = {1e-6};
  const double Ns[] = {100, 1000, 10000};
  const auto rep = approximation_error_experiment(config("n^2", {1, 0}), arith::make_fraction({1}, 3), theta, Ns);
  CHECK(rep.verdict("strictly_decreasing").value());
  CHECK(rep.fit_value("final_error").value() < 0.05);

  const auto lin = approximation_error_experiment(config("n", {0, 1}), arith::make_fraction({1}, 3), theta, Ns);
  for (const auto& row : lin.rows)
    CHECK(row[2] == doctest::Approx(0.5 * std::abs(oracle::sinc_multiplier(1e-6, row[0]))).epsilon(1e-8));
}

TEST_CASE("envelope on the linear map") {
  const auto cfg = config("n", {1, 0});
  std::vector<std::size_t> ns{1, 2, 3, 4, 5, 6};
  std::vector<std::vector<double>> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back({1e-6 * std::pow(0.5 / 1e-6, i / 30.0)});
  grid.push_back({0.0});
  const auto rep = envelope_check(cfg, ns, grid);
  CHECK(rep.verdict("finite").value());
  CHECK(rep.verdict("no_growth").value());
  for (const auto& row : rep.rows) CHECK(row[3] < 10.0);
}

TEST_CASE("linear fit") {
  const double x[] = {1, 2, 3, 4}, y[] = {3, 5, 7, 9};
  const auto [slope, intercept] = linear_fit(x, y);
  CHECK(slope == doctest::Approx(2.0));
  CHECK(intercept == doctest::Approx(1.0));
}

}
