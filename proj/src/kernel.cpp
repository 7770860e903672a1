#include "primelab/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "primelab/errors.hpp"
#include "primelab/rng.hpp"

namespace primelab::kernel {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

CZKernel::CZKernel(std::string name, std::size_t k, Eval eval, double size_constant, double lipschitz_constant,
                   bool odd, bool homogeneous, double holder_exponent)
    : name_(std::move(name)),
      k_(k),
      eval_(std::move(eval)),
      size_constant_(size_constant),
      lipschitz_constant_(lipschitz_constant),
      holder_exponent_(holder_exponent),
      odd_(odd),
      homogeneous_(homogeneous) {
  if (k_ == 0) throw DomainError("kernel dimension must be positive");
  if (!eval_) throw DomainError("kernel needs an evaluator");
  if (!(holder_exponent_ > 0.0 && holder_exponent_ <= 1.0)) throw DomainError("Holder exponent must lie in (0, 1]");
}

Complex CZKernel::operator()(std::span<const double> x) const {
  if (x.size() != k_) throw DomainError("kernel " + name_ + ": dimension mismatch");
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
    throw DomainError("kernel " + name_ + " is undefined at the origin");
  return eval_(x);
}

CZKernel builtin_kernel(std::string_view name, std::size_t k) {
  const double kd = static_cast<double>(k);
  if (name == "hilbert") {
    if (k != 1) throw DomainError("hilbert kernel requires k = 1");
    return CZKernel("hilbert", 1, [](std::span<const double> x) { return Complex(1.0 / x[0], 0.0); }, 1.0, 2.0,
                    true, true);
  }
  if (name.starts_with("riesz_")) {
    std::size_t j = 0;
    const auto digits = name.substr(6);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || j < 1 || j > k)
      throw DomainError("riesz index must lie in [1, k]: " + std::string(name));
    // |grad K| <= (k + 2) |z|^{-(k+1)} and |z| >= |x|/2 on the segment.
    const double lip = (kd + 2.0) * std::pow(2.0, kd + 1.0);
    return CZKernel(std::string(name), k,
                    [j, kd](std::span<const double> x) {
                      const double r = norm2(x);
                      return Complex(x[j - 1] / std::pow(r, kd + 1.0), 0.0);
                    },
                    1.0, lip, true, true);
  }
  if (name == "odd_homogeneous") {
    return odd_homogeneous_kernel(
        k, [](std::span<const double> th) { return Complex(th[0] * th[0] * th[0], 0.0); }, 1.0,
        (kd + 6.0) * std::pow(2.0, kd + 1.0));
  }
  if (name == "even_control") {
    return CZKernel("even_control", k,
                    [kd](std::span<const double> x) { return Complex(std::pow(norm2(x), -kd), 0.0); }, 1.0,
                    kd * std::pow(2.0, kd + 1.0), false, true);
  }
  throw DomainError("unknown kernel: " + std::string(name));
}

CZKernel odd_homogeneous_kernel(std::size_t k, std::function<Complex(std::span<const double>)> angular,
                                double size_constant, double lipschitz_constant) {
  const double kd = static_cast<double>(k);
  return CZKernel("odd_homogeneous", k,
                  [angular = std::move(angular), kd](std::span<const double> x) {
                    const double r = norm2(x);
                    std::vector<double> th(x.begin(), x.end());
                    for (double& v : th) v /= r;
                    return angular(th) * std::pow(r, -kd);
                  },
                  size_constant, lipschitz_constant, true, true);
}

CancellationReport check_cancellation(const CZKernel& kernel, const region::ConvexRegion& omega, double r, double R,
                                      double tol, const quad::Options& opts) {
  if (!(r > 0.0 && r < R)) throw DomainError("check_cancellation needs 0 < r < R");
  if (kernel.dimension() != omega.dimension()) throw DomainError("kernel and region dimensions differ");
  CancellationReport rep;
  if (kernel.odd() && omega.centrally_symmetric()) {
    rep.short_circuited = true;
    rep.pass = true;
    return rep;
  }
  const std::size_t k = omega.dimension();
  const double kd = static_cast<double>(k);
  // Polar coordinates with s = e^u: dy = s^k du dsigma.
  auto radial = [&](std::span<const double> theta) {
    const double rho = omega.radial(theta);
    std::vector<double> y(k);
    auto f = [&](double u) {
      const double s = std::exp(u);
      for (std::size_t i = 0; i < k; ++i) y[i] = s * theta[i];
      return kernel(y) * std::pow(s, kd);
    };
    return quad::integrate(f, std::log(r * rho), std::log(R * rho), opts);
  };
  const quad::Estimate e = quad::integrate_sphere(k, radial, opts);
  rep.integral = e.value;
  rep.error_estimate = e.error;
  if (e.error > tol)
    throw QuadratureError("cancellation quadrature did not converge: error " + std::to_string(e.error) +
                              " exceeds tolerance",
                          std::abs(e.value), e.error);
  rep.pass = std::abs(e.value) <= tol;
  return rep;
}

RegularityReport check_size_and_lipschitz(const CZKernel& kernel, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count == 0) throw DomainError("check_size_and_lipschitz needs at least one sample");
  const std::size_t k = kernel.dimension();
  const double kd = static_cast<double>(k);
  const double sigma = kernel.holder_exponent();
  SplitMix64 rng(seed);
  RegularityReport rep;
  rep.samples = sample_count;
  std::vector<double> x(k), y(k), xy(k);
  auto direction = [&](std::vector<double>& v) {
    double n = 0.0;
    for (auto& c : v) {
      c = rng.normal();
      n += c * c;
    }
    n = std::sqrt(n);
    for (auto& c : v) c /= n;
  };
  for (std::size_t i = 0; i < sample_count; ++i) {
    direction(x);
    const double rx = std::pow(10.0, rng.uniform(-3.0, 3.0));
    for (auto& c : x) c *= rx;
    direction(y);
    const double ry = 0.5 * rx * std::pow(10.0, rng.uniform(-6.0, 0.0));
    for (auto& c : y) c *= ry;
    for (std::size_t j = 0; j < k; ++j) xy[j] = x[j] + y[j];
    const Complex kx = kernel(x);
    rep.max_size_ratio = std::max(rep.max_size_ratio, std::abs(kx) * std::pow(rx, kd));
    const double lip = std::abs(kx - kernel(xy)) * std::pow(rx, kd + sigma) / std::pow(ry, sigma);
    rep.max_lipschitz_ratio = std::max(rep.max_lipschitz_ratio, lip);
  }
  return rep;
}

}  // namespace primelab::kernel
