#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "primelab/arith.hpp"
#include "primelab/operators.hpp"
#include "primelab/poly.hpp"
#include "primelab/quadrature.hpp"
#include "primelab/report.hpp"

namespace primelab::fourier {

using Complex = std::complex<double>;

// e(x) = exp(2 pi i x), with x reduced mod 1 first.
Complex e(double x);

// xi = a/q + theta. Phases are formed from exact residues of a . P mod q plus
// the real part theta . P, so large polynomial values lose no precision in the
// rational component.
struct Frequency {
  std::vector<std::int64_t> numerators;  // empty when q == 1
  std::int64_t q = 1;
  std::vector<double> theta;

  static Frequency real(std::vector<double> xi);
  static Frequency rational(const arith::ReducedFraction& f, std::vector<double> theta = {});

  std::size_t dimension() const noexcept { return theta.size(); }
  // a/q + theta in [-1/2, 1/2)^d.
  std::vector<double> torus_value() const;
  // xi . v mod 1 in [0, 1).
  double phase(std::span<const std::int64_t> v) const;
};

// m_t (normalized by theta_Omega(t)) for averages, n_t (kernel weighted, origin
// excluded) for Cotlar configs. Neumaier-compensated sum in orbit order.
Complex discrete_multiplier(const ops::OperatorConfig& cfg, double t, const Frequency& xi);
Complex discrete_multiplier(const ops::OperatorConfig& cfg, double t, std::span<const double> xi);
// Same sum taken in a seeded random order.
Complex discrete_multiplier_shuffled(const ops::OperatorConfig& cfg, double t, const Frequency& xi, std::uint64_t seed);

struct MultiplierEstimate {
  Complex value{};
  double error = 0.0;
  double tail_bound = 0.0;  // Psi only: neglected inner ball below 2^-40 t
};

// Phi_t (averages) or the principal value Psi_t (Cotlar configs), in polar
// coordinates with adaptive radial quadrature. Psi subtracts 1 from the
// exponential, which is exact when the kernel has vanishing annular integrals;
// a kernel failing that check raises QuadratureError.
MultiplierEstimate continuous_multiplier(const ops::OperatorConfig& cfg, double t, std::span<const double> xi,
                                         const quad::Options& opts = {});

struct GaussSum {
  arith::ReducedFraction fraction;
  region::Split split;
  Complex value{};
};

inline constexpr std::size_t kGaussTermCap = 100000;

// q^{-k'} phi(q)^{-k''} sum over x in [1,q]^{k'}, y in A_q^{k''} of e(a/q . P(x, y)).
GaussSum gauss_sum(const arith::ReducedFraction& f, const poly::PolynomialMap& map, region::Split split,
                   std::size_t term_cap = kGaussTermCap);
GaussSum gauss_sum(const arith::ReducedFraction& f, region::Split split, const poly::MultiIndexSet& gamma,
                   std::size_t term_cap = kGaussTermCap);

// Columns q, max_abs_G, in_fit. Fit key "delta" = -slope of log max|G| against
// log q over the q with max|G| > 1e-12; verdict "delta_min" compares it with
// delta_min.
ExperimentReport gauss_decay_experiment(const poly::PolynomialMap& map, region::Split split, std::uint64_t q_max,
                                        double delta_min = 0.0, std::size_t term_cap = kGaussTermCap);

struct WeylArc {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double offset = 0.0;
};

struct WeylOptions {
  std::size_t coordinate = 0;  // gamma_0: the coordinate carrying a/q + offset
  double beta = 2.0;
};

// |m_N(xi)| per N with xi_{gamma_0} = a/q + offset and the other coordinates 0.
// Arcs are per N (one arc is reused for every N). N whose q falls outside
// (log N)^beta <= q <= N^{|gamma_0|} (log N)^{-beta} are skipped with a note.
ExperimentReport weyl_decay_experiment(const ops::OperatorConfig& cfg, std::span<const double> N_list,
                                       std::span<const WeylArc> arcs, const WeylOptions& opts = {});

// Fibonacci ratio F_{k-1}/F_k with F_k the largest Fibonacci number <= N.
WeylArc fibonacci_arc(double N);

// eta on R^m: product of smooth steps in |x_i|, 1 up to 1/(32 m) and 0 from
// 1/(16 m) on. C-infinity, values in [0, 1].
double bump(std::span<const double> x);

struct CutoffProfile {
  poly::DegreeMatrix degrees;
  double N = 1.0;
  double chi = 0.01;
};

// eta_N(xi) = eta(2^{N A - N^chi Id} xi).
double cutoff(const CutoffProfile& profile, std::span<const double> xi);

// Diagonal of component degrees, matching A for canonical maps.
poly::DegreeMatrix degree_matrix(const poly::PolynomialMap& map);

struct ApproximantOptions {
  double tau = 0.5;
  double chi = 0.01;
  unsigned u = 1;
  quad::Options quad{};
  std::size_t cap = arith::default_fraction_cap();
};

struct ApproximantValue {
  Complex v{};       // with Gauss sum weights
  Complex lambda{};  // without
  std::size_t active_fractions = 0;
};

// v_j^s and Lambda_j^s at xi, summing over the annuli fractions Sigma_s.
ApproximantValue major_arc_approximant(const ops::OperatorConfig& cfg, std::size_t j, std::uint64_t s,
                                       std::span<const double> xi, const ApproximantOptions& opts = {});

// Columns N, abs_discrete, abs_model, error where error = |y_N(a/q + theta) -
// G(a/q) Theta_N(theta)|. Verdict "strictly_decreasing"; fit "final_error".
ExperimentReport approximation_error_experiment(const ops::OperatorConfig& cfg, const arith::ReducedFraction& f,
                                                std::span<const double> theta, std::span<const double> N_list,
                                                double beta = 2.0, const quad::Options& opts = {});

struct EnvelopeOptions {
  double tau = 0.5;
  double growth_limit = 2.0;
  quad::Options quad{};
};

// C*_n = max over the grid of |Theta_{N_n} - Theta_{N_{n-1}}| / min{|N_n^A xi|,
// |N_n^A xi|^{-1/|Gamma|}}. Columns n, N_n, N_prev, c_star, points. Fits
// "first_half_max", "second_half_max", "spread" (larger over smaller).
// Verdicts "finite" and "no_growth": second-half max <= growth_limit times
// the first-half max.
ExperimentReport envelope_check(const ops::OperatorConfig& cfg, std::span<const std::size_t> n_list,
                                std::span<const std::vector<double>> xi_grid, const EnvelopeOptions& opts = {});

// Least squares slope and intercept of y against x.
std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace primelab::fourier
