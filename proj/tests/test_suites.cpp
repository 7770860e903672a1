#include <doctest.h>

#include "primelab/cli/suites.hpp"
#include "primelab/errors.hpp"

using namespace primelab;
using namespace primelab::cli;

namespace {

void check_pass(const ExperimentReport& r) {
  for (const auto& [name, ok] : r.all_verdicts()) {
    INFO(r.suite << "." << name);
    CHECK(ok);
  }
  CHECK(r.pass());
}

}  // namespace

TEST_SUITE("suites") {

TEST_CASE("module checks") {
  for (const auto& r : {arith_checks(1), poly_checks(1), region_checks(1), kernel_checks(1), operator_checks(1)})
    check_pass(r);
  check_pass(rademacher_menshov_batch(3, 100, 6));
  check_pass(gauss_modulus_check(50));
  check_pass(sinc_check(50, 1e-8));
}

TEST_CASE("small suites") {
  check_pass(averages_suite(Config::parse("grid.count = 4\nfunctions.count = 2\n")));
  check_pass(cotlar_suite(Config::parse("operator.polynomial = n\noperator.kernel = hilbert\ngrid.count = 4\n")));
  check_pass(gauss_suite(Config::parse("gauss.q_max = 60\ngauss.delta_min = 0.3\n")));
  check_pass(weyl_suite(Config::parse("weyl.N = 100, 1000\n")));
  check_pass(multiparam_suite(Config::parse("multiparam.times = 2, 4\nmultiparam.functions = 2\n")));
  check_pass(seminorms_suite(Config::parse(
      "seminorms.exhaustive_length = 4\nseminorms.paths = 200\nseminorms.rm_sequences = 50\nseminorms.rm_m_max = 5\n")));
  check_pass(multiplier_suite(Config::parse("operator.polynomial = n\nmultiplier.t = 1, 5\nmultiplier.points = 20\n"
                                            "multiplier.continuous_points = 5\napprox.N = 100, 1000\n")));
  check_pass(envelope_suite(Config::parse("operator.polynomial = n\nenvelope.n_max = 6\nenvelope.points = 30\n")));
  check_pass(maximal_sweep(Config::parse("sweep.draws = 4\nsweep.functions = 2\nsweep.grid_count = 5\nsweep.radius = 8\n")));
}

TEST_CASE("cotlar needs a kernel") { CHECK_THROWS_AS(cotlar_suite(Config()), ConfigError); }

TEST_CASE("runs are reproducible") {
  const auto c = Config::parse("grid.count = 3\nfunctions.count = 2\n");
  CHECK(run_suite("averages", c).to_json() == run_suite("averages", c).to_json());
  CHECK(run_suite("averages", c).config_hash == c.hash());
  CHECK_THROWS(run_suite("nope", c));
}

TEST_CASE("suite names") {
  const auto& names = suite_names();
  CHECK(names.size() == 10);
  CHECK(std::find(names.begin(), names.end(), "verify") != names.end());
}

}
