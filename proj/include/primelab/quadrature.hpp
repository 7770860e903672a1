#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace primelab::quad {

using Complex = std::complex<double>;

struct Options {
  double abs_tol = 1e-8;   // acceptance threshold on the reported error
  double rel_tol = 1e-10;  // refinement target relative to the L1 norm of the integrand
  unsigned max_depth = 15;
  std::size_t sphere_samples = 1 << 14;  // Monte Carlo directions, k >= 3
  std::size_t replicas = 8;
  std::uint64_t seed = 0x5EEDULL;
};

struct Estimate {
  Complex value{};
  double error = 0.0;
};

// Adaptive 15/31-point Gauss-Kronrod on [a, b].
Estimate integrate(const std::function<Complex(double)>& f, double a, double b, const Options& opts = {});

// Integral over S^{k-1} against surface measure. k = 1 is the two-point set
// {-1, +1}; k = 2 is adaptive in the angle; k >= 3 uses antithetic Monte
// Carlo with the error taken from replica spread.
Estimate integrate_sphere(std::size_t k, const std::function<Estimate(std::span<const double>)>& f,
                          const Options& opts = {});

// |S^{k-1}|.
double sphere_area(std::size_t k);

}  // namespace primelab::quad
