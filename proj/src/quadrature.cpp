#include "primelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "primelab/errors.hpp"
#include "primelab/rng.hpp"

namespace primelab::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
  Complex value;
  double error;
  double l1;
};

Panel panel(const std::function<Complex(double)>& f, double a, double b) {
  Panel p{};
  p.value = GK::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  // Boost reports the single-panel error on the reference interval [-1, 1].
  p.error *= 0.5 * std::abs(b - a);
  return p;
}

// Bisection until the panel error is within its share of the budget or at
// roundoff level for the panel.
void refine(const std::function<Complex(double)>& f, double a, double b, const Panel& p, double density,
            unsigned depth, Estimate& out) {
  const double budget = density * (b - a);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * p.l1;
  if (depth == 0 || p.error <= std::max(budget, floor)) {
    out.value += p.value;
    out.error += p.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, panel(f, a, mid), density, depth - 1, out);
  refine(f, mid, b, panel(f, mid, b), density, depth - 1, out);
}

}  // namespace

Estimate integrate(const std::function<Complex(double)>& f, double a, double b, const Options& opts) {
  if (a == b) return {};
  const Panel top = panel(f, a, b);
  Estimate out;
  refine(f, a, b, top, opts.rel_tol * top.l1 / (b - a), opts.max_depth, out);
  return out;
}

double sphere_area(std::size_t k) {
  if (k == 0) throw DomainError("sphere_area: k must be positive");
  const double h = static_cast<double>(k) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

Estimate integrate_sphere(std::size_t k, const std::function<Estimate(std::span<const double>)>& f,
                          const Options& opts) {
  if (k == 0) throw DomainError("integrate_sphere: k must be positive");
  if (k == 1) {
    const double plus[1] = {1.0};
    const double minus[1] = {-1.0};
    const Estimate a = f(plus);
    const Estimate b = f(minus);
    return {a.value + b.value, a.error + b.error};
  }
  if (k == 2) {
    double inner_err = 0.0;
    auto g = [&](double phi) {
      const double theta[2] = {std::cos(phi), std::sin(phi)};
      const Estimate e = f(theta);
      inner_err = std::max(inner_err, e.error);
      return e.value;
    };
    // Eight pieces so that kinks at multiples of pi/4 sit on breakpoints.
    Estimate total;
    constexpr int pieces = 8;
    const double w = 2.0 * std::numbers::pi / pieces;
    for (int i = 0; i < pieces; ++i) {
      const Estimate e = integrate(g, i * w, (i + 1) * w, opts);
      total.value += e.value;
      total.error += e.error;
    }
    total.error += 2.0 * std::numbers::pi * inner_err;
    return total;
  }

  SplitMix64 rng(opts.seed);
  const std::size_t replicas = std::max<std::size_t>(opts.replicas, 2);
  const std::size_t per = std::max<std::size_t>(opts.sphere_samples / replicas / 2, 1);
  const double area = sphere_area(k);
  std::vector<Complex> means(replicas);
  std::vector<double> theta(k), anti(k);
  double inner_err = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    Complex acc{};
    for (std::size_t i = 0; i < per; ++i) {
      double norm = 0.0;
      for (auto& c : theta) {
        c = rng.normal();
        norm += c * c;
      }
      norm = std::sqrt(norm);
      for (std::size_t j = 0; j < k; ++j) {
        theta[j] /= norm;
        anti[j] = -theta[j];
      }
      const Estimate a = f(theta);
      const Estimate b = f(anti);
      inner_err = std::max({inner_err, a.error, b.error});
      acc += 0.5 * (a.value + b.value);
    }
    means[r] = area * acc / static_cast<double>(per);
  }
  Complex mean{};
  for (const auto& m : means) mean += m;
  mean /= static_cast<double>(replicas);
  double var = 0.0;
  for (const auto& m : means) var += std::norm(m - mean);
  var /= static_cast<double>(replicas - 1);
  return {mean, std::sqrt(var / static_cast<double>(replicas)) + area * inner_err};
}

}  // namespace primelab::quad
