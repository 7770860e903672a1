#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "primelab/quadrature.hpp"
#include "primelab/region.hpp"

namespace primelab::kernel {

using Complex = std::complex<double>;

// Calderon-Zygmund kernel on R^k minus the origin.
class CZKernel {
 public:
  using Eval = std::function<Complex(std::span<const double>)>;

  // `odd` asserts K(-x) = -K(x) exactly; it licenses the symmetric-region
  // short-circuit in check_cancellation. holder_exponent is sigma in the
  // Holder form of the regularity bound; the built-ins use 1.
  CZKernel(std::string name, std::size_t k, Eval eval, double size_constant, double lipschitz_constant, bool odd,
           bool homogeneous, double holder_exponent = 1.0);

  // Throws DomainError at the origin or on a dimension mismatch.
  Complex operator()(std::span<const double> x) const;

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return k_; }
  double size_constant() const noexcept { return size_constant_; }
  double lipschitz_constant() const noexcept { return lipschitz_constant_; }
  double holder_exponent() const noexcept { return holder_exponent_; }
  bool odd() const noexcept { return odd_; }
  // Homogeneous of degree -k.
  bool homogeneous() const noexcept { return homogeneous_; }

 private:
  std::string name_;
  std::size_t k_;
  Eval eval_;
  double size_constant_;
  double lipschitz_constant_;
  double holder_exponent_;
  bool odd_;
  bool homogeneous_;
};

// Names: "hilbert" (k = 1, 1/x), "riesz_<j>" (x_j / |x|^{k+1}),
// "odd_homogeneous" (x_1^3 / |x|^{k+3}) and the deliberately invalid
// "even_control" (|x|^{-k}, fails cancellation).
CZKernel builtin_kernel(std::string_view name, std::size_t k);

// K(x) = angular(x / |x|) |x|^{-k}; angular must be odd on the sphere.
CZKernel odd_homogeneous_kernel(std::size_t k, std::function<Complex(std::span<const double>)> angular,
                                double size_constant, double lipschitz_constant);

struct CancellationReport {
  Complex integral{};
  double error_estimate = 0.0;
  bool short_circuited = false;
  bool pass = false;
};

// Integral of K over Omega_R minus Omega_r; pass iff |value| <= tol. Throws
// QuadratureError when the quadrature error itself exceeds tol.
CancellationReport check_cancellation(const CZKernel& kernel, const region::ConvexRegion& omega, double r, double R,
                                      double tol, const quad::Options& opts = {});

struct RegularityReport {
  double max_size_ratio = 0.0;       // sup |K(x)| |x|^k
  double max_lipschitz_ratio = 0.0;  // sup |K(x) - K(x+y)| |x|^{k+sigma} / |y|^sigma over 2|y| <= |x|
  std::size_t samples = 0;
};

RegularityReport check_size_and_lipschitz(const CZKernel& kernel, std::size_t sample_count, std::uint64_t seed);

}  // namespace primelab::kernel
