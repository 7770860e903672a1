#include <doctest.h>

#include "primelab/errors.hpp"
#include "primelab/poly.hpp"
#include "primelab/rng.hpp"

using namespace primelab;
using namespace primelab::poly;

namespace {

std::vector<std::int64_t> ints(const std::vector<Integer>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("gamma sets") {
  CHECK(gamma_set(1, 2).indices() == std::vector<MultiIndex>{{1}, {2}});
  CHECK(gamma_set(2, 1).indices() == std::vector<MultiIndex>{{0, 1}, {1, 0}});
  CHECK(gamma_set(1, 1).indices() == std::vector<MultiIndex>{{1}});
  CHECK(gamma_set(2, 2).indices() == std::vector<MultiIndex>{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}});
  for (std::size_t k = 1; k <= 3; ++k)
    for (int d = 1; d <= 4; ++d) {
      const auto g = gamma_set(k, d);
      CHECK(g.is_complete());
      CHECK(std::is_sorted(g.indices().begin(), g.indices().end()));
      for (const auto& gamma : g.indices()) {
        CHECK(total_degree(gamma) >= 1);
        CHECK(total_degree(gamma) <= d);
      }
    }
}

TEST_CASE("canonical evaluation") {
  const std::int64_t three[] = {3};
  CHECK(ints(canonical_eval(gamma_set(1, 2), three)) == std::vector<std::int64_t>{3, 9});
  const std::int64_t zero[] = {0, 0};
  for (const auto& v : canonical_eval(gamma_set(2, 3), zero)) CHECK(v == 0);
  const MultiIndexSet g(2, {{0, 1}, {1, 0}, {1, 1}});
  const std::int64_t x[] = {2, 5};
  CHECK(ints(canonical_eval(g, x)) == std::vector<std::int64_t>{5, 2, 10});
}

TEST_CASE("overflow falls back to big integers") {
  const std::int64_t big[] = {std::int64_t{1} << 40};
  const auto g = gamma_set(1, 3);
  CHECK_FALSE(canonical_eval_i64(g, big).has_value());
  const auto v = canonical_eval(g, big);
  CHECK(v[2] == Integer(1) << 120);
}

TEST_CASE("map evaluation") {
  const std::int64_t four[] = {4};
  CHECK(ints(map_eval(parse_polynomial_map("n^2"), four)) == std::vector<std::int64_t>{16});
  const auto P = parse_polynomial_map("n1 + n2^2; n1*n2");
  const std::int64_t x[] = {2, 3};
  CHECK(ints(map_eval(P, x)) == std::vector<std::int64_t>{11, 6});
  const std::int64_t z[] = {0, 0};
  CHECK(ints(map_eval(P, z)) == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("parser") {
  const auto P = parse_polynomial_map("3*n1^2*n2 - n2 + 2*n1^2*n2\nn1");
  CHECK(P.source_dim() == 2);
  CHECK(P.target_dim() == 2);
  CHECK(P.degree() == 3);
  CHECK(parse_polynomial_map(P.to_string()) == P);
  CHECK(parse_polynomial_map("n + 2*n^3", 1).degree() == 3);
  CHECK_THROWS_AS(parse_polynomial_map("n + 1"), ConfigError);
  CHECK_THROWS_AS(parse_polynomial_map("n^"), ConfigError);
  CHECK_THROWS_AS(parse_polynomial_map("n3", 2), ConfigError);
}

TEST_CASE("lifting consistency") {
  for (const char* text : {"n^2", "3*n^3 - n", "n1 + n2^2; n1*n2", "2*n1^2*n2 - n2^3 + n1"}) {
    const auto P = parse_polynomial_map(text);
    const auto gamma = gamma_set(P.source_dim(), P.degree());
    const auto lift = P.lift(gamma);
    std::vector<std::int64_t> x(P.source_dim(), -5);
    while (true) {
      const auto q = canonical_eval(gamma, x);
      const auto direct = P.eval(x);
      for (std::size_t j = 0; j < P.target_dim(); ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < gamma.size(); ++i) s += lift[j][i] * q[i];
        CHECK(s == direct[j]);
      }
      std::size_t i = 0;
      while (i < x.size() && ++x[i] > 5) x[i++] = -5;
      if (i == x.size()) break;
    }
  }
}

TEST_CASE("coordinate doubling scales monomials by 2^gamma_i") {
  const auto gamma = gamma_set(2, 3);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::int64_t x[] = {rng.integer(-20, 20), rng.integer(-20, 20)};
    const auto a = canonical_eval(gamma, x);
    x[0] *= 2;
    const auto b = canonical_eval(gamma, x);
    for (std::size_t i = 0; i < gamma.size(); ++i) CHECK(b[i] == a[i] * (Integer(1) << gamma[i][0]));
  }
}

TEST_CASE("degree matrix scaling") {
  const DegreeMatrix A(gamma_set(1, 2));
  const double v[] = {1.0, 1.0};
  CHECK(scale(A, 2.0, v) == std::vector<double>{2.0, 4.0});
  CHECK(scale(A, 1.0, v) == std::vector<double>{1.0, 1.0});
  const DegreeMatrix B(gamma_set(1, 3));
  const double w[] = {1.0, 2.0, 3.0};
  const auto s = scale(B, 10.0, w);
  CHECK(s[0] == doctest::Approx(10.0));
  CHECK(s[1] == doctest::Approx(200.0));
  CHECK(s[2] == doctest::Approx(3000.0));
}

TEST_CASE("scaling is a group action") {
  const DegreeMatrix A(gamma_set(2, 3));
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double s = rng.uniform(0.1, 4.0), t = rng.uniform(0.1, 4.0);
    std::vector<double> v(A.size());
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    const auto lhs = scale(A, s * t, v);
    const auto rhs = scale(A, s, scale(A, t, v));
    for (std::size_t j = 0; j < v.size(); ++j) CHECK(lhs[j] == doctest::Approx(rhs[j]).epsilon(1e-12));
  }
}

}
