#include <doctest.h>

#include <algorithm>

#include "primelab/cli/config.hpp"
#include "primelab/errors.hpp"

using namespace primelab;
using namespace primelab::cli;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    Config::parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("git blob hash") {
  CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("defaults") {
  const Config c;
  CHECK(c.text("operator.polynomial") == "n^2");
  CHECK(c.integer("run.seed") == 20240601);
  CHECK(c.reals("multiplier.t") == std::vector<double>{1, 2, 5, 10, 50});
  CHECK_FALSE(c.boolean("output.timing"));
  CHECK(c.is_default("grid.tau"));
  const auto& reg = key_registry();
  CHECK(std::is_sorted(reg.begin(), reg.end(), [](const KeySpec& a, const KeySpec& b) { return a.name < b.name; }));
}

TEST_CASE("parsing") {
  const auto c = Config::parse("# comment\n\noperator.polynomial = n^3 + n   # trailing\ngrid.tau=0.25\nweyl.N = 10, 20\n");
  CHECK(c.text("operator.polynomial") == "n^3 + n");
  CHECK(c.real("grid.tau") == 0.25);
  CHECK(c.reals("weyl.N") == std::vector<double>{10, 20});
  CHECK_FALSE(c.is_default("grid.tau"));
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("grid.tau = 0.5\nbogus.key = 1\n") == 2);
  CHECK(error_line("grid.count = 3\n\ngrid.count = 4\n") == 3);
  CHECK(error_line("grid.count = three\n") == 1);
  CHECK(error_line("# x\ngrid.count 3\n") == 2);
  CHECK(error_line("count = 3\n") == 1);
  CHECK(error_line("output.timing = maybe\n") == 1);
  CHECK_THROWS_AS(Config::load("/nonexistent/primelab.cfg"), ConfigError);
}

TEST_CASE("hash tracks content, not layout") {
  const auto a = Config::parse("grid.tau = 0.25\ngrid.count = 3\n");
  const auto b = Config::parse("# reordered\ngrid.count=3\n\ngrid.tau   =   0.25\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() != Config().hash());
  CHECK(a.hash().size() == 40);
}

TEST_CASE("converters") {
  auto c = Config::parse(
      "operator.polynomial = n1^2 + n2\noperator.k_int = 1\noperator.k_prime = 1\n"
      "operator.region = ellipsoid\noperator.region_params = 1, 0.5\n");
  const auto cfg = operator_config(c);
  CHECK(cfg.split == region::Split{1, 1});
  CHECK(cfg.region.shape() == region::Shape::Ellipsoid);
  CHECK(cfg.is_average());

  const auto h = operator_config(Config::parse("operator.polynomial = n\noperator.kernel = hilbert\n"));
  CHECK_FALSE(h.is_average());

  CHECK(time_grid(Config::parse("grid.kind = dyadic\ngrid.count = 3\n")).values() == std::vector<double>{2, 4, 8});
  CHECK(time_grid(Config::parse("grid.kind = explicit\ngrid.values = 1.5, 3\n")).values() ==
        std::vector<double>{1.5, 3});
  CHECK_THROWS_AS(time_grid(Config::parse("grid.kind = spiral\n")), ConfigError);
  CHECK_THROWS_AS(operator_config(Config::parse("operator.polynomial = n1 + n2\n")), ConfigError);
  CHECK(quad_options(Config::parse("quad.rel_tol = 1e-6\n")).rel_tol == 1e-6);
  CHECK(seed(Config::parse("run.seed = 5\n")) == 5);
}

}
