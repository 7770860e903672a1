#pragma once

#include <string>
#include <vector>

#include "primelab/cli/config.hpp"
#include "primelab/report.hpp"

namespace primelab::cli {

ExperimentReport averages_suite(const Config& c);
ExperimentReport cotlar_suite(const Config& c);
ExperimentReport seminorms_suite(const Config& c);
ExperimentReport gauss_suite(const Config& c);
ExperimentReport weyl_suite(const Config& c);
ExperimentReport multiplier_suite(const Config& c);
ExperimentReport envelope_suite(const Config& c);
ExperimentReport maximal_sweep(const Config& c);
ExperimentReport multiparam_suite(const Config& c);
ExperimentReport verify_suite(const Config& c);

// Building blocks of `verify`, usable on their own.
ExperimentReport arith_checks(std::uint64_t seed);
ExperimentReport poly_checks(std::uint64_t seed);
ExperimentReport region_checks(std::uint64_t seed);
ExperimentReport kernel_checks(std::uint64_t seed);
ExperimentReport operator_checks(std::uint64_t seed);
ExperimentReport rademacher_menshov_batch(std::uint64_t seed, std::size_t sequences, unsigned m_max);
// |G(a/q)| = q^{-1/2} for n^2 at odd primes q <= q_max.
ExperimentReport gauss_modulus_check(std::uint64_t q_max, double tol = 1e-10);
// Phi_t for the linear k = 1 ball against sin(2 pi xi t) / (2 pi xi t).
ExperimentReport sinc_check(std::size_t points, double tol, const quad::Options& opts = {});

const std::vector<std::string>& suite_names();
ExperimentReport run_suite(const std::string& name, const Config& c);

}  // namespace primelab::cli
