#include "primelab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "primelab/errors.hpp"
#include "primelab/kernel.hpp"
#include "primelab/parallel.hpp"
#include "primelab/rng.hpp"

namespace primelab::fourier {

namespace {

__extension__ using i128 = __int128;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct ComplexNeumaier {
  Neumaier re, im;
  void add(Complex z) {
    re.add(z.real());
    im.add(z.imag());
  }
  Complex value() const { return {re.value(), im.value()}; }
};

double wrap(double x) {
  double r = x - std::floor(x + 0.5);
  if (r >= 0.5) r -= 1.0;
  return r;
}

bool is_origin(const region::Point& p) {
  return std::all_of(p.begin(), p.end(), [](std::int64_t c) { return c == 0; });
}

int component_degree(const poly::PolynomialMap::Component& c) {
  int d = 0;
  for (const auto& [gamma, coef] : c) d = std::max(d, poly::total_degree(gamma));
  return d;
}

// sum_j |xi_j| sum |c| R^{|gamma|}: a bound on the phase variation over B(0, R).
double phase_bound(const poly::PolynomialMap& map, std::span<const double> xi, double R) {
  double b = 0.0;
  for (std::size_t j = 0; j < map.target_dim(); ++j) {
    if (xi[j] == 0.0) continue;
    double c = 0.0;
    for (const auto& [gamma, coef] : map.components()[j])
      c += std::abs(static_cast<double>(coef)) * std::pow(R, poly::total_degree(gamma));
    b += std::abs(xi[j]) * c;
  }
  return b;
}

double real_phase(const poly::PolynomialMap& map, std::span<const double> xi, std::span<const double> y) {
  const auto v = map.eval_real(y);
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += xi[j] * v[j];
  return s;
}

quad::Estimate integrate_pieces(const std::function<Complex(double)>& f, double a, double b, std::size_t pieces,
                                const quad::Options& opts) {
  quad::Estimate total;
  const double w = (b - a) / static_cast<double>(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double lo = a + w * static_cast<double>(i);
    const double hi = i + 1 == pieces ? b : lo + w;
    const auto e = quad::integrate(f, lo, hi, opts);
    total.value += e.value;
    total.error += e.error;
  }
  return total;
}

// e(x) - 1 without cancellation for small x.
Complex em1(double x) {
  const double r = x - std::nearbyint(x);
  const double h = std::sin(std::numbers::pi * r);
  return {-2.0 * h * h, std::sin(kTwoPi * r)};
}

std::size_t oscillation_pieces(double bound) {
  return static_cast<std::size_t>(std::clamp(std::ceil(2.0 * bound), 1.0, 2048.0));
}

}  // namespace

Complex e(double x) {
  const double r = x - std::floor(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

Frequency Frequency::real(std::vector<double> xi) {
  Frequency f;
  f.theta = std::move(xi);
  return f;
}

Frequency Frequency::rational(const arith::ReducedFraction& fr, std::vector<double> theta) {
  Frequency f;
  f.numerators = fr.numerators;
  f.q = fr.denominator;
  if (theta.empty()) theta.assign(fr.dimension(), 0.0);
  if (theta.size() != fr.dimension()) throw DomainError("frequency offset has the wrong dimension");
  f.theta = std::move(theta);
  if (f.q == 1) f.numerators.clear();
  return f;
}

std::vector<double> Frequency::torus_value() const {
  std::vector<double> v(theta.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double a = numerators.empty() ? 0.0 : static_cast<double>(numerators[j]) / static_cast<double>(q);
    v[j] = wrap(a + theta[j]);
  }
  return v;
}

double Frequency::phase(std::span<const std::int64_t> v) const {
  if (v.size() != theta.size()) throw DomainError("frequency dimension does not match the lattice point");
  double frac = 0.0;
  if (q > 1 && !numerators.empty()) {
    i128 r = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      i128 vj = static_cast<i128>(v[j]) % q;
      if (vj < 0) vj += q;
      r = (r + static_cast<i128>(numerators[j]) * vj) % q;
    }
    frac = static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(q);
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (theta[j] == 0.0 || v[j] == 0) continue;
    const double x = static_cast<double>(v[j]);
    const double p = theta[j] * x;
    const double err = std::fma(theta[j], x, -p);
    frac += (p - std::floor(p)) + err;
  }
  frac -= std::floor(frac);
  return frac >= 1.0 ? 0.0 : frac;
}

// Multipliers ------------------------------------------------------------------

namespace {

struct WeightedShift {
  const region::Point* shift;
  Complex weight;
};

std::vector<WeightedShift> multiplier_terms(const ops::OperatorConfig& cfg, const std::vector<ops::OrbitTerm>& terms) {
  std::vector<WeightedShift> out;
  out.reserve(terms.size());
  for (const auto& term : terms) {
    if (cfg.kernel) {
      if (is_origin(term.source)) continue;
      std::vector<double> x(term.source.begin(), term.source.end());
      out.push_back({&term.shift, term.log_weight * (*cfg.kernel)(x)});
    } else {
      out.push_back({&term.shift, term.log_weight});
    }
  }
  return out;
}

Complex sum_terms(const ops::OperatorConfig& cfg, const std::vector<WeightedShift>& ws, const Frequency& xi) {
  ComplexNeumaier acc;
  Neumaier theta;
  for (const auto& w : ws) {
    acc.add(e(xi.phase(*w.shift)) * w.weight);
    theta.add(w.weight.real());
  }
  if (cfg.kernel) return acc.value();
  const double norm = theta.value();
  if (norm == 0.0) throw DegenerateNormalization("theta_Omega(t) = 0");
  return acc.value() / norm;
}

}  // namespace

Complex discrete_multiplier(const ops::OperatorConfig& cfg, double t, const Frequency& xi) {
  if (xi.dimension() != cfg.map.target_dim()) throw DomainError("frequency dimension does not match the map");
  const auto terms = ops::orbit(cfg, t);
  return sum_terms(cfg, multiplier_terms(cfg, terms), xi);
}

Complex discrete_multiplier(const ops::OperatorConfig& cfg, double t, std::span<const double> xi) {
  return discrete_multiplier(cfg, t, Frequency::real(std::vector<double>(xi.begin(), xi.end())));
}

Complex discrete_multiplier_shuffled(const ops::OperatorConfig& cfg, double t, const Frequency& xi,
                                     std::uint64_t seed) {
  if (xi.dimension() != cfg.map.target_dim()) throw DomainError("frequency dimension does not match the map");
  const auto terms = ops::orbit(cfg, t);
  auto ws = multiplier_terms(cfg, terms);
  SplitMix64 rng(seed);
  for (std::size_t i = ws.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(i) - 1));
    std::swap(ws[i - 1], ws[j]);
  }
  return sum_terms(cfg, ws, xi);
}

MultiplierEstimate continuous_multiplier(const ops::OperatorConfig& cfg, double t, std::span<const double> xi,
                                         const quad::Options& opts) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("time must be positive");
  if (xi.size() != cfg.map.target_dim()) throw DomainError("frequency dimension does not match the map");
  const std::size_t k = cfg.map.source_dim();
  const bool zero = std::all_of(xi.begin(), xi.end(), [](double x) { return x == 0.0; });
  const auto& omega = cfg.region;
  std::vector<double> y(k);

  if (!cfg.kernel) {
    if (zero) return {1.0, 0.0, 0.0};
    const auto volume = quad::integrate_sphere(
        k,
        [&](std::span<const double> theta) {
          const double rho = omega.radial(theta);
          return quad::Estimate{std::pow(rho, static_cast<double>(k)) / static_cast<double>(k), 0.0};
        },
        opts);
    const auto num = quad::integrate_sphere(
        k,
        [&](std::span<const double> theta) {
          const double rho = omega.radial(theta);
          auto g = [&](double s) {
            for (std::size_t i = 0; i < k; ++i) y[i] = t * s * theta[i];
            return e(real_phase(cfg.map, xi, y)) * std::pow(s, static_cast<double>(k - 1));
          };
          return integrate_pieces(g, 0.0, rho, oscillation_pieces(phase_bound(cfg.map, xi, t * rho)), opts);
        },
        opts);
    const double den = volume.value.real();
    MultiplierEstimate out;
    out.value = num.value / den;
    out.error = num.error / den + std::abs(out.value) * volume.error / den;
    return out;
  }

  if (zero) return {0.0, 0.0, 0.0};
  const auto& K = *cfg.kernel;
  constexpr int kOctaves = 40;
  const double eps = std::ldexp(1.0, -kOctaves);
  if (!(K.odd() && K.homogeneous())) {
    const auto rep = kernel::check_cancellation(K, omega, eps * t, t, opts.abs_tol, opts);
    if (!rep.pass)
      throw QuadratureError("principal value does not converge: kernel integral over the annulus is " +
                                std::to_string(std::abs(rep.integral)),
                            std::abs(rep.integral), rep.error_estimate);
  }
  double tail = 0.0;
  const auto num = quad::integrate_sphere(
      k,
      [&](std::span<const double> theta) {
        const double R = t * omega.radial(theta);
        auto h = [&](double u) {
          const double r = std::exp(u);
          for (std::size_t i = 0; i < k; ++i) y[i] = r * theta[i];
          return em1(real_phase(cfg.map, xi, y)) * K(y) * std::pow(r, static_cast<double>(k));
        };
        quad::Estimate total;
        const double top = std::log(R);
        for (int i = 0; i < kOctaves; ++i) {
          const double hi = top - i * std::numbers::ln2;
          const double lo = hi - std::numbers::ln2;
          const auto part =
              integrate_pieces(h, lo, hi, oscillation_pieces(phase_bound(cfg.map, xi, std::exp(hi))), opts);
          total.value += part.value;
          total.error += part.error;
        }
        const double rmin = R * eps;
        for (std::size_t i = 0; i < k; ++i) y[i] = rmin * theta[i];
        const double t_theta = kTwoPi * std::abs(real_phase(cfg.map, xi, y)) * std::abs(K(y)) *
                               std::pow(rmin, static_cast<double>(k));
        tail = std::max(tail, t_theta);
        return total;
      },
      opts);
  MultiplierEstimate out;
  out.value = num.value;
  out.error = num.error;
  out.tail_bound = quad::sphere_area(k) * tail;
  return out;
}

// Gauss sums -------------------------------------------------------------------

GaussSum gauss_sum(const arith::ReducedFraction& f, const poly::PolynomialMap& map, region::Split split,
                   std::size_t term_cap) {
  if (f.dimension() != map.target_dim()) throw DomainError("fraction dimension does not match the map");
  if (split.total() != map.source_dim()) throw DomainError("split does not match the map");
  const std::int64_t q = f.denominator;
  const auto uq = static_cast<std::uint64_t>(q);

  std::vector<std::int64_t> units;
  if (split.prime_dims > 0)
    for (std::int64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) units.push_back(a);

  const double count = std::pow(static_cast<double>(q), static_cast<double>(split.integer_dims)) *
                       std::pow(static_cast<double>(units.size()), static_cast<double>(split.prime_dims));
  if (count > static_cast<double>(term_cap))
    throw SizeLimitError("Gauss sum with q = " + std::to_string(q) + " needs " + format_number(count) + " terms",
                         term_cap);

  // e(r/q) with table[q - r] = conj(table[r]) exactly.
  std::vector<Complex> table(uq);
  for (std::uint64_t r = 0; 2 * r <= uq; ++r) {
    if (2 * r == uq) {
      table[r] = {-1.0, 0.0};
      continue;
    }
    const double ang = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
    table[r] = r == 0 ? Complex{1.0, 0.0} : Complex{std::cos(ang), std::sin(ang)};
    if (r) table[uq - r] = std::conj(table[r]);
  }

  struct Mono {
    std::int64_t coef;
    std::vector<int> exps;
  };
  std::vector<std::vector<Mono>> comps;
  for (const auto& comp : map.components()) {
    std::vector<Mono> ms;
    for (const auto& [gamma, c] : comp) {
      std::int64_t cm = c % q;
      if (cm < 0) cm += q;
      if (cm) ms.push_back({cm, gamma});
    }
    comps.push_back(std::move(ms));
  }
  std::vector<std::int64_t> a(f.numerators);
  for (auto& x : a) x %= q;

  const std::size_t k = map.source_dim();
  std::vector<std::int64_t> x(k);
  std::vector<std::size_t> idx(k, 0);
  auto value_at = [&](std::size_t i, std::size_t pos) {
    return i < split.integer_dims ? static_cast<std::int64_t>(pos) + 1 : units[pos];
  };
  auto extent = [&](std::size_t i) { return i < split.integer_dims ? uq : units.size(); };
  for (std::size_t i = 0; i < k; ++i)
    if (extent(i) == 0) return {f, split, 0.0};

  ComplexNeumaier acc;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) x[i] = value_at(i, idx[i]) % q;
    i128 r = 0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (a[j] == 0) continue;
      i128 pj = 0;
      for (const auto& m : comps[j]) {
        i128 term = m.coef;
        for (std::size_t i = 0; i < k; ++i)
          for (int p = 0; p < m.exps[i]; ++p) term = term * x[i] % q;
        pj = (pj + term) % q;
      }
      r = (r + pj * a[j]) % q;
    }
    acc.add(table[static_cast<std::size_t>(r)]);
    std::size_t i = k;
    while (i > 0 && ++idx[i - 1] == extent(i - 1)) {
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return {f, split, acc.value() / count};
}

GaussSum gauss_sum(const arith::ReducedFraction& f, region::Split split, const poly::MultiIndexSet& gamma,
                   std::size_t term_cap) {
  return gauss_sum(f, poly::canonical_map(gamma), split, term_cap);
}

std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear fit needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("linear fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ExperimentReport gauss_decay_experiment(const poly::PolynomialMap& map, region::Split split, std::uint64_t q_max,
                                        double delta_min, std::size_t term_cap) {
  if (q_max < 2) throw DomainError("q_max must be at least 2");
  ExperimentReport rep("gauss", {"q", "max_abs_G", "in_fit"});
  rep.param("q_max", static_cast<double>(q_max));
  rep.param("delta_min", delta_min);
  const std::size_t d = map.target_dim();
  const auto maxima = parallel_map<double>(q_max, [&](std::size_t i) {
    const std::uint64_t q = i + 1;
    double m = 0.0;
    arith::for_each_fraction(q, q, d, [&](const arith::ReducedFraction& f) {
      m = std::max(m, std::abs(gauss_sum(f, map, split, term_cap).value));
    });
    return m;
  });
  std::vector<double> lx, ly;
  std::size_t excluded = 0;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const double m = maxima[q - 1];
    const bool in = m > 1e-12;
    rep.add_row({static_cast<double>(q), m, in ? 1.0 : 0.0});
    if (in) {
      lx.push_back(std::log(static_cast<double>(q)));
      ly.push_back(std::log(m));
    } else {
      ++excluded;
    }
  }
  if (excluded) rep.note(std::to_string(excluded) + " denominators with max|G| = 0 left out of the fit");
  const auto [slope, icept] = linear_fit(lx, ly);
  rep.set_fit("delta", -slope);
  rep.set_fit("intercept", icept);
  rep.set_verdict("delta_min", -slope >= delta_min);
  return rep;
}

// Weyl -------------------------------------------------------------------------

WeylArc fibonacci_arc(double N) {
  std::int64_t a = 1, b = 1;
  while (static_cast<double>(a + b) <= N) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return {a, b, 0.0};
}

ExperimentReport weyl_decay_experiment(const ops::OperatorConfig& cfg, std::span<const double> N_list,
                                       std::span<const WeylArc> arcs, const WeylOptions& opts) {
  const std::size_t d = cfg.map.target_dim();
  if (opts.coordinate >= d) throw DomainError("Weyl coordinate out of range");
  if (arcs.size() != 1 && arcs.size() != N_list.size()) throw DomainError("give one arc or one arc per N");
  ExperimentReport rep("weyl", {"N", "q", "abs_m", "log_N"});
  rep.param("beta", opts.beta);
  rep.param("coordinate", static_cast<double>(opts.coordinate));
  const int deg = component_degree(cfg.map.components()[opts.coordinate]);

  std::vector<std::size_t> run;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    const double N = N_list[i];
    const auto& arc = arcs.size() == 1 ? arcs[0] : arcs[i];
    const double L = std::pow(std::log(N), opts.beta);
    const double q = static_cast<double>(arc.q);
    if (!(N > 1.0) || q < L || q > std::pow(N, deg) / L) {
      rep.note("N = " + format_number(N) + " skipped: q = " + std::to_string(arc.q) + " outside the minor-arc window");
      continue;
    }
    run.push_back(i);
  }
  const auto values = parallel_map<double>(run.size(), [&](std::size_t r) {
    const std::size_t i = run[r];
    const auto& arc = arcs.size() == 1 ? arcs[0] : arcs[i];
    Frequency xi;
    xi.q = arc.q;
    xi.numerators.assign(d, 0);
    xi.numerators[opts.coordinate] = arc.a % arc.q;
    xi.theta.assign(d, 0.0);
    xi.theta[opts.coordinate] = arc.offset;
    return std::abs(discrete_multiplier(cfg, N_list[i], xi));
  });
  std::vector<double> lx, ly;
  bool monotone = true;
  for (std::size_t r = 0; r < run.size(); ++r) {
    const std::size_t i = run[r];
    const auto& arc = arcs.size() == 1 ? arcs[0] : arcs[i];
    rep.add_row({N_list[i], static_cast<double>(arc.q), values[r], std::log(N_list[i])});
    if (r && !(values[r] < values[r - 1])) monotone = false;
    if (values[r] > 0.0) {
      lx.push_back(std::log(std::log(N_list[i])));
      ly.push_back(std::log(values[r]));
    }
  }
  rep.set_fit("monotone", monotone ? 1.0 : 0.0);
  if (lx.size() >= 2) {
    const auto [slope, icept] = linear_fit(lx, ly);
    rep.set_fit("alpha", -slope);
    rep.set_verdict("decay_trend", slope < 0.0);
  } else {
    rep.note("fewer than two admissible N; no trend fitted");
    rep.set_verdict("decay_trend", false);
  }
  return rep;
}

// Cutoff -----------------------------------------------------------------------

namespace {

double psi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double smooth_step(double x, double a, double b) {
  const double ax = std::abs(x);
  if (ax <= a) return 1.0;
  if (ax >= b) return 0.0;
  const double s = (ax - a) / (b - a);
  const double p = psi(1.0 - s);
  return p / (p + psi(s));
}

}  // namespace

double bump(std::span<const double> x) {
  if (x.empty()) throw DomainError("bump needs at least one coordinate");
  const double m = static_cast<double>(x.size());
  const double a = 1.0 / (32.0 * m), b = 1.0 / (16.0 * m);
  double v = 1.0;
  for (double c : x) {
    v *= smooth_step(c, a, b);
    if (v == 0.0) break;
  }
  return v;
}

double cutoff(const CutoffProfile& profile, std::span<const double> xi) {
  const auto& diag = profile.degrees.diagonal();
  if (xi.size() != diag.size()) throw DomainError("cutoff dimension does not match the degree matrix");
  const double shift = std::pow(profile.N, profile.chi);
  std::vector<double> scaled(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] == 0.0) continue;
    scaled[i] = xi[i] * std::exp2(profile.N * diag[i] - shift);
  }
  return bump(scaled);
}

poly::DegreeMatrix degree_matrix(const poly::PolynomialMap& map) {
  std::vector<int> diag;
  for (const auto& c : map.components()) diag.push_back(std::max(component_degree(c), 1));
  return poly::DegreeMatrix(std::move(diag));
}

ApproximantValue major_arc_approximant(const ops::OperatorConfig& cfg, std::size_t j, std::uint64_t s,
                                       std::span<const double> xi, const ApproximantOptions& opts) {
  if (j == 0) throw DomainError("approximant index j must be positive");
  const std::size_t d = cfg.map.target_dim();
  if (xi.size() != d) throw DomainError("frequency dimension does not match the map");
  const double Nj = static_cast<double>(ops::TimeGrid::generator_value(j, opts.tau));
  const double Nprev = static_cast<double>(ops::TimeGrid::generator_value(j - 1, opts.tau));
  const CutoffProfile profile{degree_matrix(cfg.map), std::pow(static_cast<double>(j), opts.tau), opts.chi};
  ApproximantValue out;
  std::vector<double> delta(d);
  for (const auto& f : arith::annuli_fraction_set(s, opts.u, d, opts.cap)) {
    for (std::size_t i = 0; i < d; ++i) delta[i] = wrap(xi[i] - f.torus_rep[i]);
    const double eta = cutoff(profile, delta);
    if (eta == 0.0) continue;
    ++out.active_fractions;
    Complex diff = 0.0;
    if (Nj != Nprev)
      diff = continuous_multiplier(cfg, Nj, delta, opts.quad).value -
             continuous_multiplier(cfg, Nprev, delta, opts.quad).value;
    const Complex term = diff * eta;
    out.lambda += term;
    out.v += gauss_sum(f, cfg.map, cfg.split).value * term;
  }
  return out;
}

ExperimentReport approximation_error_experiment(const ops::OperatorConfig& cfg, const arith::ReducedFraction& f,
                                                std::span<const double> theta, std::span<const double> N_list,
                                                double beta, const quad::Options& opts) {
  ExperimentReport rep("approximation", {"N", "abs_discrete", "abs_model", "error", "quad_error"});
  rep.param("q", static_cast<double>(f.denominator));
  rep.param("beta", beta);
  const std::vector<double> th(theta.begin(), theta.end());
  const Complex G = gauss_sum(f, cfg.map, cfg.split).value;
  std::vector<std::size_t> run;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    if (static_cast<double>(f.denominator) > std::pow(std::log(N_list[i]), beta)) {
      rep.note("N = " + format_number(N_list[i]) + " skipped: q exceeds (log N)^beta");
      continue;
    }
    run.push_back(i);
  }
  struct Row {
    double disc, model, err, qerr;
  };
  const auto rows = parallel_map<Row>(run.size(), [&](std::size_t r) {
    const double N = N_list[run[r]];
    const Complex y = discrete_multiplier(cfg, N, Frequency::rational(f, th));
    const auto theta_n = continuous_multiplier(cfg, N, th, opts);
    const Complex model = G * theta_n.value;
    return Row{std::abs(y), std::abs(model), std::abs(y - model), std::abs(G) * theta_n.error};
  });
  bool decreasing = true;
  for (std::size_t r = 0; r < run.size(); ++r) {
    rep.add_row({N_list[run[r]], rows[r].disc, rows[r].model, rows[r].err, rows[r].qerr});
    if (r && !(rows[r].err < rows[r - 1].err)) decreasing = false;
  }
  rep.set_fit("gauss_abs", std::abs(G));
  if (!rows.empty()) rep.set_fit("final_error", rows.back().err);
  rep.set_verdict("strictly_decreasing", decreasing && run.size() >= 2);
  return rep;
}

ExperimentReport envelope_check(const ops::OperatorConfig& cfg, std::span<const std::size_t> n_list,
                                std::span<const std::vector<double>> xi_grid, const EnvelopeOptions& opts) {
  if (n_list.empty()) throw DomainError("envelope check needs at least one n");
  const std::size_t d = cfg.map.target_dim();
  const auto diag = degree_matrix(cfg.map).diagonal();
  ExperimentReport rep("envelope", {"n", "N_n", "N_prev", "c_star", "points", "max_quad_error"});
  rep.param("tau", opts.tau);
  rep.param("growth_limit", opts.growth_limit);
  rep.param("grid_points", static_cast<double>(xi_grid.size()));

  std::map<std::int64_t, std::size_t> scale_index;
  for (auto n : n_list) {
    scale_index.emplace(ops::TimeGrid::generator_value(n, opts.tau), 0);
    if (n > 0) scale_index.emplace(ops::TimeGrid::generator_value(n - 1, opts.tau), 0);
  }
  std::vector<double> scales;
  for (auto& [N, idx] : scale_index) {
    idx = scales.size();
    scales.push_back(static_cast<double>(N));
  }
  for (const auto& xi : xi_grid)
    if (xi.size() != d) throw DomainError("grid frequency has the wrong dimension");

  // theta_values[g][s] = Theta_{scales[s]}(xi_grid[g]).
  const auto theta_values = parallel_map<std::vector<MultiplierEstimate>>(xi_grid.size(), [&](std::size_t g) {
    std::vector<MultiplierEstimate> v(scales.size());
    for (std::size_t s = 0; s < scales.size(); ++s) v[s] = continuous_multiplier(cfg, scales[s], xi_grid[g], opts.quad);
    return v;
  });

  std::vector<double> cs;
  bool finite = true;
  for (auto n : n_list) {
    if (n == 0) throw DomainError("envelope n starts at 1");
    const auto Nn = ops::TimeGrid::generator_value(n, opts.tau);
    const auto Np = ops::TimeGrid::generator_value(n - 1, opts.tau);
    const std::size_t a = scale_index.at(Nn), b = scale_index.at(Np);
    double c = 0.0, qerr = 0.0;
    std::size_t used = 0;
    for (std::size_t g = 0; g < xi_grid.size(); ++g) {
      double m = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        m = std::max(m, std::abs(std::pow(static_cast<double>(Nn), diag[i]) * xi_grid[g][i]));
      if (m == 0.0) continue;
      ++used;
      const double env = std::min(m, std::pow(m, -1.0 / static_cast<double>(d)));
      const double num = std::abs(theta_values[g][a].value - theta_values[g][b].value);
      c = std::max(c, num / env);
      qerr = std::max(qerr, theta_values[g][a].error + theta_values[g][b].error);
    }
    finite = finite && std::isfinite(c);
    cs.push_back(c);
    rep.add_row({static_cast<double>(n), static_cast<double>(Nn), static_cast<double>(Np), c,
                 static_cast<double>(used), qerr});
  }
  const std::size_t half = cs.size() / 2;
  const double first = half ? *std::max_element(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(half)) : 0.0;
  const double second = *std::max_element(cs.begin() + static_cast<std::ptrdiff_t>(half), cs.end());
  const double lo = std::min(first, second), hi = std::max(first, second);
  rep.set_fit("first_half_max", first);
  rep.set_fit("second_half_max", second);
  rep.set_fit("spread", lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
  rep.set_verdict("finite", finite);
  rep.set_verdict("no_growth", half > 0 && second <= opts.growth_limit * first);
  return rep;
}

}  // namespace primelab::fourier
