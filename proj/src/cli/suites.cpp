#include "primelab/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "primelab/arith.hpp"
#include "primelab/errors.hpp"
#include "primelab/fourier.hpp"
#include "primelab/kernel.hpp"
#include "primelab/operators.hpp"
#include "primelab/parallel.hpp"
#include "primelab/poly.hpp"
#include "primelab/region.hpp"
#include "primelab/rng.hpp"
#include "primelab/seminorms.hpp"

namespace primelab::cli {

namespace {

using Complex = std::complex<double>;
using ops::LatticeFunction;
using region::Point;

constexpr double kTol = seminorms::kInequalityTol;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t to_size(const Config& c, const std::string& key, std::int64_t min = 0) {
  const auto v = c.integer(key);
  if (v < min) throw ConfigError(key + " must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

void box_points(std::size_t d, std::int64_t radius, const std::function<void(const Point&)>& visit) {
  Point x(d, -radius);
  while (true) {
    visit(x);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++x[i] <= radius) break;
      x[i] = -radius;
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

LatticeFunction random_function(SplitMix64& rng, std::size_t d, std::int64_t radius, bool nonnegative) {
  LatticeFunction f(d);
  box_points(d, radius, [&](const Point& x) {
    if (nonnegative)
      f.set(x, rng.uniform());
    else
      f.set(x, Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
  });
  return f;
}

double max_abs_diff(const LatticeFunction& a, const LatticeFunction& b) {
  double m = 0.0;
  for (const auto& [x, v] : a.support()) m = std::max(m, std::abs(v - b(x)));
  for (const auto& [x, v] : b.support()) m = std::max(m, std::abs(v - a(x)));
  return m;
}

std::size_t quad_terms(std::size_t cap) {
  if (const char* env = std::getenv("PRIMELAB_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return cap;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("log grid needs 0 < min < max");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                                       static_cast<double>(n - 1));
  return out;
}

bool linear_ball(const ops::OperatorConfig& cfg) {
  return cfg.map == poly::parse_polynomial_map("n") && cfg.region.shape() == region::Shape::Ball &&
         cfg.split == region::Split{1, 0} && cfg.is_average();
}

void stamp(ExperimentReport& r, const Config& c) {
  r.config_hash = c.hash();
  r.param("seed", static_cast<double>(seed(c)));
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentReport averages_suite(const Config& c) {
  const auto cfg = operator_config(c);
  if (!cfg.is_average()) throw ConfigError("averages needs operator.kernel = none");
  const auto grid = time_grid(c);
  const double p = c.real("functions.p");
  if (p < 1.0) throw ConfigError("functions.p must be at least 1");
  const auto count = to_size(c, "functions.count", 1);
  const auto radius = static_cast<std::int64_t>(to_size(c, "functions.radius"));
  const std::size_t d = cfg.map.target_dim();

  SplitMix64 rng(seed(c));
  std::vector<LatticeFunction> fs, gs;
  for (std::size_t i = 0; i < count; ++i) fs.push_back(random_function(rng, d, radius, false));
  for (std::size_t i = 0; i < count; ++i) gs.push_back(random_function(rng, d, radius, true));

  ExperimentReport r("averages", {"t", "theta", "l1_delta", "max_lp_ratio", "max_sup_ratio", "min_nonneg_output",
                                  "max_nonneg_imag", "delta_peak", "peak_bound"});
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());
  r.param("region", cfg.region.describe());
  r.param("p", p);

  const auto delta = LatticeFunction::delta(d);
  const auto rows = parallel_map<std::vector<double>>(grid.size(), [&](std::size_t i) {
    const double t = grid.values()[i];
    const double theta = ops::chebyshev(cfg.region, cfg.split, t);
    const auto ad = ops::average(cfg, t, delta);
    double peak = 0.0;
    for (const auto& [x, v] : ad.support()) peak = std::max(peak, std::abs(v));
    std::map<Point, std::size_t> fibre;
    double wmax = 0.0;
    std::size_t fmax = 0;
    for (const auto& term : ops::orbit(cfg, t)) {
      fmax = std::max(fmax, ++fibre[term.shift]);
      wmax = std::max(wmax, term.log_weight);
    }
    double lp = 0.0, sup = 0.0, min_out = std::numeric_limits<double>::infinity(), max_imag = 0.0;
    for (const auto& f : fs) {
      const auto af = ops::average(cfg, t, f);
      lp = std::max(lp, af.norm(p) / f.norm(p));
      sup = std::max(sup, af.sup_norm() / f.sup_norm());
    }
    for (const auto& g : gs) {
      const auto ag = ops::average(cfg, t, g);
      for (const auto& [x, v] : ag.support()) {
        min_out = std::min(min_out, v.real());
        max_imag = std::max(max_imag, std::abs(v.imag()));
      }
    }
    return std::vector<double>{t,   theta,   ad.norm(1.0), lp, sup, min_out, max_imag, peak,
                               static_cast<double>(fmax) * wmax / theta};
  });

  bool l1 = true, lpc = true, supc = true, pos = true, bound = true;
  for (const auto& row : rows) {
    l1 = l1 && std::abs(row[2] - 1.0) <= 1e-12;
    lpc = lpc && row[3] <= 1.0 + kTol;
    supc = supc && row[4] <= 1.0 + kTol;
    pos = pos && row[5] >= 0.0 && row[6] == 0.0;
    bound = bound && row[7] <= row[8] * (1.0 + kTol);
    r.add_row(row);
  }
  r.set_verdict("l1_normalization", l1);
  r.set_verdict("lp_contraction", lpc);
  r.set_verdict("sup_contraction", supc);
  r.set_verdict("positivity", pos);
  r.set_verdict("pointwise_bound", bound);
  if (rows.size() >= 2) r.set_verdict("pointwise_decay", rows.back()[7] < rows.front()[7]);
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport cotlar_suite(const Config& c) {
  const auto cfg = operator_config(c);
  if (cfg.is_average()) throw ConfigError("cotlar needs operator.kernel");
  const auto& K = *cfg.kernel;
  const auto grid = time_grid(c);
  const auto count = to_size(c, "functions.count", 1);
  const auto radius = static_cast<std::int64_t>(to_size(c, "functions.radius"));
  const std::size_t d = cfg.map.target_dim();
  const bool symmetric = K.odd() && cfg.region.centrally_symmetric();

  SplitMix64 rng(seed(c));
  std::vector<LatticeFunction> fs;
  for (std::size_t i = 0; i < 2 * count; ++i) fs.push_back(random_function(rng, d, radius, false));

  ExperimentReport r("cotlar", {"t", "orbit_terms", "kernel_mass", "abs_n0", "delta_formula_error",
                                "linearity_error", "cancellation_value"});
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());
  r.param("kernel", K.name());
  r.param("region", cfg.region.describe());

  const auto qopts = quad_options(c);
  const auto delta = LatticeFunction::delta(d);
  const auto rows = parallel_map<std::vector<double>>(grid.size(), [&](std::size_t i) {
    const double t = grid.values()[i];
    const auto terms = ops::orbit(cfg, t);
    LatticeFunction expected(d);
    double mass = 0.0;
    Complex n0{};
    std::size_t used = 0;
    for (const auto& term : terms) {
      if (std::all_of(term.source.begin(), term.source.end(), [](auto v) { return v == 0; })) continue;
      std::vector<double> y(term.source.begin(), term.source.end());
      const Complex w = K(y) * term.log_weight;
      expected.add(term.shift, w);
      mass += std::abs(w);
      n0 += w;
      ++used;
    }
    const double formula = max_abs_diff(ops::cotlar(cfg, t, delta), expected);
    double lin = 0.0;
    for (std::size_t j = 0; j + 1 < fs.size(); j += 2) {
      LatticeFunction sum = fs[j];
      for (const auto& [x, v] : fs[j + 1].support()) sum.add(x, 2.0 * v);
      auto rhs = ops::cotlar(cfg, t, fs[j + 1]);
      rhs *= 2.0;
      const auto hf = ops::cotlar(cfg, t, fs[j]);
      for (const auto& [x, v] : hf.support()) rhs.add(x, v);
      lin = std::max(lin, max_abs_diff(ops::cotlar(cfg, t, sum), rhs) / std::max(mass, 1.0));
    }
    double cancel = kNaN;
    if (t > 1.0) cancel = std::abs(kernel::check_cancellation(K, cfg.region, 1.0, t, 1e-8, qopts).integral);
    return std::vector<double>{t, static_cast<double>(used), mass, std::abs(n0), formula, lin, cancel};
  });

  bool formula = true, lin = true, zero = true, cancel = true;
  for (const auto& row : rows) {
    formula = formula && row[4] <= 1e-12 * std::max(row[2], 1.0);
    lin = lin && row[5] <= 1e-12;
    zero = zero && row[3] <= 1e-12 * std::max(row[2], 1.0);
    cancel = cancel && (std::isnan(row[6]) || row[6] <= 1e-8);
    r.add_row(row);
  }
  r.set_verdict("delta_formula", formula);
  r.set_verdict("linearity", lin);
  if (symmetric)
    r.set_verdict("zero_frequency", zero);
  else
    r.note("kernel not odd or region not symmetric: zero_frequency not asserted");
  r.set_verdict("cancellation", cancel);

  const auto reg = kernel::check_size_and_lipschitz(K, 10000, seed(c));
  r.set_fit("max_size_ratio", reg.max_size_ratio);
  r.set_fit("max_lipschitz_ratio", reg.max_lipschitz_ratio);
  r.set_verdict("size_condition", reg.max_size_ratio <= 2.0 * K.size_constant());
  r.set_verdict("lipschitz_condition", reg.max_lipschitz_ratio <= 2.0 * K.lipschitz_constant());
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport rademacher_menshov_batch(std::uint64_t seed_value, std::size_t sequences, unsigned m_max) {
  if (m_max < 2 || m_max > 20) throw ConfigError("seminorms.rm_m_max must lie in [2, 20]");
  ExperimentReport r("rademacher_menshov", {"m", "sequences", "failures", "unclipped_failures", "max_lhs_over_rhs"});
  const auto rows = parallel_map<std::vector<double>>(m_max - 1, [&](std::size_t idx) {
    const unsigned m = static_cast<unsigned>(idx + 2);
    SplitMix64 rng(seed_value ^ (0x9E3779B97F4A7C15ULL * m));
    const std::uint64_t top = std::uint64_t{1} << m;
    std::size_t fail = 0, fail_u = 0;
    double worst = 0.0;
    std::vector<Complex> a;
    for (std::size_t s = 0; s < sequences; ++s) {
      const auto k = static_cast<std::uint64_t>(rng.integer(0, static_cast<std::int64_t>(top) - 1));
      a.resize(top - k + 1);
      for (auto& v : a) v = {rng.normal(), rng.normal()};
      const auto rep = seminorms::rademacher_menshov_check(a, k, m, true);
      const auto rep_u = seminorms::rademacher_menshov_check(a, k, m, false);
      fail += !rep.pass;
      fail_u += !rep_u.pass;
      worst = std::max(worst, rep.lhs / rep.rhs);
    }
    return std::vector<double>{static_cast<double>(m), static_cast<double>(sequences), static_cast<double>(fail),
                               static_cast<double>(fail_u), worst};
  });
  bool ok = true, ok_u = true;
  for (const auto& row : rows) {
    ok = ok && row[2] == 0.0;
    ok_u = ok_u && row[3] == 0.0;
    r.add_row(row);
  }
  r.set_verdict("inequality", ok);
  r.set_verdict("inequality_unclipped", ok_u);
  return r;
}

ExperimentReport seminorms_suite(const Config& c) {
  const auto ex_len = to_size(c, "seminorms.exhaustive_length", 1);
  const auto paths = to_size(c, "seminorms.paths");
  const auto len = to_size(c, "seminorms.length", 1);
  const double lambda = c.real("seminorms.lambda");
  if (ex_len > seminorms::kOracleJumpCap || len > seminorms::kOracleJumpCap)
    throw ConfigError("seminorm path lengths are capped at " + std::to_string(seminorms::kOracleJumpCap));
  if (!(lambda > 0.0)) throw ConfigError("seminorms.lambda must be positive");
  const double rs[3] = {1.0, 2.0, 3.0};

  ExperimentReport r("seminorms", {"length", "random", "paths", "max_variation_diff", "jump_mismatches",
                                   "monotonicity_violations", "bridge_violations", "oscillation_violations",
                                   "multi_mismatches"});
  stamp(r, c);
  r.param("lambda", lambda);

  struct Tally {
    double var_diff = 0.0;
    std::size_t jump = 0, mono = 0, bridge = 0, osc = 0, multi = 0;
  };
  auto check = [&](const seminorms::SampledPath& path, double lam, SplitMix64& rng, Tally& t) {
    double v[3];
    for (int i = 0; i < 3; ++i) {
      v[i] = seminorms::variation(path, rs[i]);
      const double o = seminorms::oracle_variation(path, rs[i]);
      t.var_diff = std::max(t.var_diff, std::abs(v[i] - o));
    }
    for (double l : {lam, 1.0}) {
      const auto j = seminorms::jump_count(path, l);
      t.jump += j != seminorms::oracle_jump(path, l);
      for (int i = 0; i < 3; ++i)
        t.bridge += l * std::pow(static_cast<double>(j), 1.0 / rs[i]) > v[i] * (1.0 + kTol) + kTol;
    }
    t.mono += v[1] > v[0] * (1.0 + kTol) + kTol || v[2] > v[1] * (1.0 + kTol) + kTol;
    // Random window sequence drawn from the sample times plus one point past the end.
    const auto& times = path.times();
    std::vector<double> I;
    for (double s : times)
      if (rng.uniform() < 0.5) I.push_back(s);
    if (I.empty()) I.push_back(times.front());
    I.push_back(times.back() + 1.0);
    const std::size_t N = I.size() - 1;
    const double o = seminorms::oscillation(path, I, N, 2.0);
    t.osc += o > v[1] * (1.0 + kTol) + kTol;
    std::vector<std::vector<double>> pts;
    for (double s : I) pts.push_back({s});
    const seminorms::GridField field({times}, path.values());
    t.multi += seminorms::multi_oscillation(field, seminorms::BoxSequence(pts), N, 2.0) != o;
  };
  auto emit = [&](std::size_t length, bool random, std::size_t n, const Tally& t) {
    r.add_row({static_cast<double>(length), random ? 1.0 : 0.0, static_cast<double>(n), t.var_diff,
               static_cast<double>(t.jump), static_cast<double>(t.mono), static_cast<double>(t.bridge),
               static_cast<double>(t.osc), static_cast<double>(t.multi)});
  };

  const auto exhaustive = parallel_map<Tally>(ex_len, [&](std::size_t idx) {
    const std::size_t L = idx + 1;
    SplitMix64 rng(seed(c) + L);
    Tally t;
    std::size_t total = 1;
    for (std::size_t i = 0; i < L; ++i) total *= 3;
    std::vector<Complex> vals(L);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t x = code;
      for (auto& v : vals) {
        v = static_cast<double>(x % 3) - 1.0;
        x /= 3;
      }
      check(seminorms::SampledPath::indexed(vals), lambda, rng, t);
    }
    return t;
  });
  std::size_t total = 1;
  for (std::size_t L = 1; L <= ex_len; ++L) emit(L, false, total *= 3, exhaustive[L - 1]);

  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(paths, 16));
  const auto random = parallel_map<Tally>(chunks, [&](std::size_t chunk) {
    SplitMix64 rng(seed(c) ^ (0xD1B54A32D192ED03ULL * (chunk + 1)));
    Tally t;
    const std::size_t lo = paths * chunk / chunks, hi = paths * (chunk + 1) / chunks;
    std::vector<Complex> vals(len);
    for (std::size_t s = lo; s < hi; ++s) {
      for (auto& v : vals) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      check(seminorms::SampledPath::indexed(vals), lambda, rng, t);
    }
    return t;
  });
  Tally rt;
  for (const auto& t : random) {
    rt.var_diff = std::max(rt.var_diff, t.var_diff);
    rt.jump += t.jump;
    rt.mono += t.mono;
    rt.bridge += t.bridge;
    rt.osc += t.osc;
    rt.multi += t.multi;
  }
  if (paths > 0) emit(len, true, paths, rt);

  double var_diff = 0.0;
  double counts[5] = {};
  for (const auto& row : r.rows) {
    var_diff = std::max(var_diff, row[3]);
    for (int i = 0; i < 5; ++i) counts[i] += row[4 + i];
  }
  r.set_fit("max_variation_diff", var_diff);
  r.set_verdict("variation_oracle", var_diff <= 1e-10);
  r.set_verdict("jump_oracle", counts[0] == 0.0);
  r.set_verdict("monotone_in_r", counts[1] == 0.0);
  r.set_verdict("jump_variation_bridge", counts[2] == 0.0);
  r.set_verdict("oscillation_below_variation", counts[3] == 0.0);
  r.set_verdict("single_parameter_reduction", counts[4] == 0.0);

  r.add_part(rademacher_menshov_batch(seed(c), to_size(c, "seminorms.rm_sequences"),
                                      static_cast<unsigned>(to_size(c, "seminorms.rm_m_max"))));
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport gauss_suite(const Config& c) {
  const auto cfg = operator_config(c);
  const auto q_max = static_cast<std::uint64_t>(to_size(c, "gauss.q_max", 2));
  const std::size_t cap = quad_terms(fourier::kGaussTermCap);
  auto r = fourier::gauss_decay_experiment(cfg.map, cfg.split, q_max, c.real("gauss.delta_min"), cap);
  r.suite = "gauss";
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());

  const std::size_t d = cfg.map.target_dim();
  const std::uint64_t q_sym = std::min<std::uint64_t>(q_max, d == 1 ? 40 : (d == 2 ? 12 : 5));
  ExperimentReport sym("gauss_symmetry", {"q", "fractions", "max_abs_G", "max_conjugate_error"});
  const auto rows = parallel_map<std::vector<double>>(q_sym, [&](std::size_t i) {
    const auto q = static_cast<std::uint64_t>(i + 1);
    double mx = 0.0, conj = 0.0;
    std::size_t n = 0;
    arith::for_each_fraction(q, q, d, [&](const arith::ReducedFraction& f) {
      const auto g = fourier::gauss_sum(f, cfg.map, cfg.split, cap).value;
      const auto h = fourier::gauss_sum(f.negated(), cfg.map, cfg.split, cap).value;
      mx = std::max(mx, std::abs(g));
      conj = std::max(conj, std::abs(h - std::conj(g)));
      ++n;
    });
    return std::vector<double>{static_cast<double>(q), static_cast<double>(n), mx, conj};
  });
  bool bounded = true, symmetric = true;
  for (const auto& row : rows) {
    bounded = bounded && row[2] <= 1.0 + kTol;
    symmetric = symmetric && row[3] <= kTol;
    sym.add_row(row);
  }
  sym.set_verdict("bounded", bounded);
  sym.set_verdict("conjugate_symmetry", symmetric);
  r.add_part(std::move(sym));
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport weyl_suite(const Config& c) {
  const auto cfg = operator_config(c);
  if (!cfg.is_average()) throw ConfigError("weyl needs operator.kernel = none");
  const auto Ns = c.reals("weyl.N");
  if (Ns.empty()) throw ConfigError("weyl.N is empty");
  const double offset = c.real("weyl.offset");
  std::vector<fourier::WeylArc> arcs;
  const std::string& spec = c.text("weyl.arcs");
  if (spec == "fibonacci") {
    for (double N : Ns) {
      auto arc = fourier::fibonacci_arc(N);
      arc.offset = offset;
      arcs.push_back(arc);
    }
  } else {
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      std::int64_t a = 0, q = 0;
      char slash = 0;
      std::istringstream is(item);
      if (!(is >> a >> slash >> q) || slash != '/' || q < 1)
        throw ConfigError("weyl.arcs: expected 'a/q', got '" + item + "'");
      arcs.push_back({a, q, offset});
    }
    if (arcs.size() != 1 && arcs.size() != Ns.size()) throw ConfigError("weyl.arcs: give one arc or one per N");
  }
  fourier::WeylOptions opts;
  opts.coordinate = to_size(c, "weyl.coordinate");
  opts.beta = c.real("weyl.beta");
  if (opts.coordinate >= cfg.map.target_dim()) throw ConfigError("weyl.coordinate out of range");
  auto r = fourier::weyl_decay_experiment(cfg, Ns, arcs, opts);
  r.suite = "weyl";
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());
  r.param("arcs", spec);

  ExperimentReport control("major_arc_control", {"N", "abs_m_at_zero"});
  const std::vector<double> zero(cfg.map.target_dim(), 0.0);
  bool unit = true;
  for (double N : Ns) {
    const double v = std::abs(fourier::discrete_multiplier(cfg, N, zero));
    unit = unit && std::abs(v - 1.0) <= 1e-12;
    control.add_row({N, v});
  }
  control.set_verdict("no_decay_at_zero", unit);
  r.add_part(std::move(control));
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport sinc_check(std::size_t points, double tol, const quad::Options& opts) {
  const ops::OperatorConfig lin{poly::parse_polynomial_map("n"), region::ConvexRegion::ball(1), {1, 0}, std::nullopt};
  ExperimentReport r("sinc", {"t", "xi", "phi", "exact", "error", "quad_error"});
  const auto rows = parallel_map<std::vector<double>>(points, [&](std::size_t i) {
    const double t = 1.0 + static_cast<double>(i % 50);
    const double xi = -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(points);
    const double x[1] = {xi};
    const auto est = fourier::continuous_multiplier(lin, t, x, opts);
    const double arg = 2.0 * std::numbers::pi * xi * t;
    const double exact = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
    return std::vector<double>{t, xi, est.value.real(), exact, std::abs(est.value - exact), est.error};
  });
  double worst = 0.0;
  for (const auto& row : rows) {
    worst = std::max(worst, row[4]);
    r.add_row(row);
  }
  r.set_fit("max_error", worst);
  r.param("tolerance", tol);
  r.set_verdict("sinc_oracle", worst <= tol);
  return r;
}

ExperimentReport multiplier_suite(const Config& c) {
  const auto cfg = operator_config(c);
  const auto ts = c.reals("multiplier.t");
  const auto points = to_size(c, "multiplier.points", 1);
  const auto cont_points = std::min(points, to_size(c, "multiplier.continuous_points"));
  const double tol = c.real("multiplier.tol");
  const auto qopts = quad_options(c);
  const std::size_t d = cfg.map.target_dim();
  const bool lin = linear_ball(cfg);

  std::vector<std::vector<double>> xis(points, std::vector<double>(d));
  SplitMix64 rng(seed(c));
  for (std::size_t i = 0; i < points; ++i)
    for (std::size_t j = 0; j < d; ++j)
      xis[i][j] = d == 1 ? -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(points) : rng.uniform(-0.5, 0.5);

  ExperimentReport r("multiplier", {"t", "points", "value_at_zero", "max_abs_discrete", "max_shuffle_diff",
                                    "continuous_at_zero", "max_abs_continuous", "max_quad_error", "max_sinc_error"});
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());
  r.param("kernel", cfg.kernel ? cfg.kernel->name() : "none");

  const std::vector<double> zero(d, 0.0);
  const auto rows = parallel_map<std::vector<double>>(ts.size(), [&](std::size_t ti) {
    const double t = ts[ti];
    const Complex at0 = fourier::discrete_multiplier(cfg, t, zero);
    double mx = 0.0, shuffle = 0.0, cmx = 0.0, qerr = 0.0, sinc = lin ? 0.0 : kNaN;
    for (std::size_t i = 0; i < points; ++i) {
      const Complex v = fourier::discrete_multiplier(cfg, t, xis[i]);
      mx = std::max(mx, std::abs(v));
      const auto w = fourier::discrete_multiplier_shuffled(cfg, t, fourier::Frequency::real(xis[i]), seed(c) + i);
      shuffle = std::max(shuffle, std::abs(v - w));
    }
    const auto c0 = fourier::continuous_multiplier(cfg, t, zero, qopts);
    for (std::size_t i = 0; i < cont_points; ++i) {
      const auto& xi = xis[i * points / std::max<std::size_t>(cont_points, 1)];
      const auto est = fourier::continuous_multiplier(cfg, t, xi, qopts);
      cmx = std::max(cmx, std::abs(est.value) - est.error);
      qerr = std::max(qerr, est.error);
      if (lin) {
        const double arg = 2.0 * std::numbers::pi * xi[0] * t;
        sinc = std::max(sinc, std::abs(est.value - (arg == 0.0 ? 1.0 : std::sin(arg) / arg)));
      }
    }
    return std::vector<double>{t,
                               static_cast<double>(points),
                               cfg.is_average() ? at0.real() : std::abs(at0),
                               mx,
                               shuffle,
                               std::abs(c0.value),
                               cmx,
                               qerr,
                               sinc};
  });

  bool at_zero = true, bounded = true, order = true, c_zero = true, c_bounded = true, sinc_ok = true;
  for (const auto& row : rows) {
    order = order && row[4] <= 1e-9;
    if (cfg.is_average()) {
      at_zero = at_zero && row[2] == 1.0;
      bounded = bounded && row[3] <= 1.0 + kTol;
      c_zero = c_zero && row[5] == 1.0;
      c_bounded = c_bounded && row[6] <= 1.0 + 1e-9;
    } else {
      at_zero = at_zero && row[2] <= 1e-12 * std::max(1.0, row[3]);
      c_zero = c_zero && row[5] == 0.0;
    }
    sinc_ok = sinc_ok && (std::isnan(row[8]) || row[8] <= tol);
    r.add_row(row);
  }
  r.set_verdict("value_at_zero", at_zero);
  r.set_verdict("order_independence", order);
  r.set_verdict("continuous_at_zero", c_zero);
  if (cfg.is_average()) {
    r.set_verdict("bounded", bounded);
    r.set_verdict("continuous_bounded", c_bounded);
  }
  if (lin) r.set_verdict("sinc_oracle", sinc_ok);

  if (cfg.is_average()) {
    const auto q = c.integer("approx.q");
    const auto a = c.integer("approx.a");
    std::vector<std::int64_t> nums(d, q);
    nums[0] = a;
    std::vector<double> theta(d, 0.0);
    theta[0] = c.real("approx.theta");
    arith::ReducedFraction frac;
    try {
      frac = arith::make_fraction(nums, q);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("approx: ") + e.what());
    }
    auto ap = fourier::approximation_error_experiment(cfg, frac, theta, c.reals("approx.N"), c.real("approx.beta"),
                                                      qopts);
    ap.suite = "approximation";
    const auto final_error = ap.fit_value("final_error");
    ap.set_verdict("final_error_bound", final_error && *final_error < c.real("approx.error_max"));
    r.add_part(std::move(ap));
  } else {
    r.note("approximation part skipped for Cotlar configs");
  }
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport envelope_suite(const Config& c) {
  const auto cfg = operator_config(c);
  const auto n_max = to_size(c, "envelope.n_max", 2);
  std::vector<std::size_t> ns(n_max);
  std::iota(ns.begin(), ns.end(), std::size_t{1});
  std::vector<std::vector<double>> grid;
  for (double x : log_grid(c.real("envelope.xi_min"), c.real("envelope.xi_max"), to_size(c, "envelope.points", 1)))
    grid.emplace_back(cfg.map.target_dim(), x);
  fourier::EnvelopeOptions opts;
  opts.tau = c.real("envelope.tau");
  opts.growth_limit = c.real("envelope.growth_limit");
  opts.quad = quad_options(c);
  auto r = fourier::envelope_check(cfg, ns, grid, opts);
  r.suite = "envelope";
  stamp(r, c);
  r.param("polynomial", cfg.map.to_string());
  return r;
}

// ---------------------------------------------------------------------------

namespace {

poly::PolynomialMap random_polynomial(SplitMix64& rng, std::size_t k, int degree, std::int64_t coef_max) {
  const auto gamma = poly::gamma_set(k, degree);
  while (true) {
    poly::PolynomialMap::Component comp;
    bool top = false;
    for (const auto& g : gamma.indices()) {
      const auto c = rng.integer(-coef_max, coef_max);
      if (c == 0) continue;
      comp[g] = c;
      top = top || poly::total_degree(g) == degree;
    }
    if (top) return poly::PolynomialMap(k, {comp});
  }
}

}  // namespace

ExperimentReport maximal_sweep(const Config& c) {
  const auto base = operator_config(c);
  if (!base.is_average()) throw ConfigError("maximal needs operator.kernel = none");
  const auto draws = to_size(c, "sweep.draws", 1);
  const int degree = static_cast<int>(to_size(c, "sweep.degree", 1));
  const auto coef_max = c.integer("sweep.coef_max");
  if (coef_max < 1) throw ConfigError("sweep.coef_max must be positive");
  const auto count = to_size(c, "sweep.functions", 1);
  const auto radius = static_cast<std::int64_t>(to_size(c, "sweep.radius"));
  const auto grid = ops::TimeGrid::dyadic(to_size(c, "sweep.grid_count", 1));
  const double p = c.real("functions.p");
  if (!(p > 1.0)) throw ConfigError("functions.p must exceed 1 for the maximal sweep");
  const std::size_t k = base.split.total();

  SplitMix64 rng(seed(c));
  std::vector<poly::PolynomialMap> maps;
  for (std::size_t i = 0; i < draws; ++i) maps.push_back(random_polynomial(rng, k, degree, coef_max));
  std::vector<LatticeFunction> fs;
  for (std::size_t i = 0; i < count; ++i) fs.push_back(random_function(rng, 1, radius, false));
  const double norm = ops::vector_norm(fs, p);

  ExperimentReport r("maximal", {"draw", "ratio_maximal", "ratio_difference"});
  stamp(r, c);
  r.param("p", p);
  r.param("degree", static_cast<double>(degree));
  r.param("grid", "2..2^" + std::to_string(grid.size()));

  const auto rows = parallel_map<std::vector<double>>(draws, [&](std::size_t i) {
    const ops::OperatorConfig cfg{maps[i], base.region, base.split, std::nullopt};
    const double m = ops::sup_functional(cfg, grid, fs, p, ops::SupVariant::Maximal);
    const double s = ops::sup_functional(cfg, grid, fs, p, ops::SupVariant::Difference);
    return std::vector<double>{static_cast<double>(i), m / norm, s / norm};
  });
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.add_row(rows[i]);
    r.note("draw " + std::to_string(i) + ": " + maps[i].to_string());
    lo = std::min(lo, rows[i][1]);
    hi = std::max(hi, rows[i][1]);
  }
  r.set_fit("min_ratio", lo);
  r.set_fit("max_ratio", hi);
  r.set_fit("spread", hi / lo);
  r.set_verdict("bounded_spread", hi / lo <= c.real("sweep.spread_max"));
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport multiparam_suite(const Config& c) {
  const auto M = to_size(c, "multiparam.blocks");
  if (M != 2 && M != 3) throw ConfigError("multiparam.blocks must be 2 or 3");
  const auto times = c.reals("multiparam.times");
  try {
    ops::TimeGrid check(times);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("multiparam.times: ") + e.what());
  }
  const ops::OperatorConfig lin{poly::parse_polynomial_map("n"), region::ConvexRegion::ball(1), {1, 0}, std::nullopt};
  std::vector<ops::BlockConfig> blocks, reversed;
  for (std::size_t m = 0; m < M; ++m) blocks.push_back({lin, {m}});
  reversed.assign(blocks.rbegin(), blocks.rend());

  std::vector<std::string> cols;
  for (std::size_t m = 0; m < M; ++m) cols.push_back("t" + std::to_string(m + 1));
  for (const char* s : {"delta_value", "expected", "swap_identical", "sequential_diff"}) cols.push_back(s);
  ExperimentReport r("multiparam", cols);
  stamp(r, c);
  r.param("blocks", static_cast<double>(M));

  const std::size_t g = times.size();
  std::size_t cells = 1;
  for (std::size_t m = 0; m < M; ++m) cells *= g;
  auto index_of = [&](std::size_t cell) {
    std::vector<std::size_t> idx(M);
    for (std::size_t m = M; m-- > 0;) {
      idx[m] = cell % g;
      cell /= g;
    }
    return idx;
  };
  const auto delta = LatticeFunction::delta(M);
  const Point origin(M, 0);
  const auto rows = parallel_map<std::vector<double>>(cells, [&](std::size_t cell) {
    const auto idx = index_of(cell);
    std::vector<double> t(M);
    double prod = 1.0;
    for (std::size_t m = 0; m < M; ++m) {
      t[m] = times[idx[m]];
      prod *= ops::chebyshev(lin.region, lin.split, t[m]);
    }
    std::vector<double> t_rev(t.rbegin(), t.rend());
    const auto a = ops::composed_average(blocks, t, delta);
    const auto b = ops::composed_average(reversed, t_rev, delta);
    const auto s = ops::sequential_composition(blocks, t, delta);
    std::vector<double> row = t;
    row.push_back(a(origin).real());
    row.push_back(1.0 / prod);
    row.push_back(a == b ? 1.0 : 0.0);
    row.push_back(max_abs_diff(a, s));
    return row;
  });
  bool exact = true, swap = true, seq = true, mono = true;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const auto& row = rows[cell];
    exact = exact && row[M] == row[M + 1];
    swap = swap && row[M + 2] == 1.0;
    seq = seq && row[M + 3] <= 1e-15;
    const auto idx = index_of(cell);
    std::size_t stride = 1;
    for (std::size_t m = M; m-- > 0;) {
      if (idx[m] + 1 < g) mono = mono && rows[cell + stride][M] < row[M];
      stride *= g;
    }
    r.add_row(row);
  }
  r.set_verdict("product_formula", exact);
  r.set_verdict("order_swap_identical", swap);
  r.set_verdict("sequential_agreement", seq);
  r.set_verdict("monotone_decrease", mono);

  // Oscillation of t -> A_t f(0) over random box sequences.
  const auto nf = to_size(c, "multiparam.functions");
  const auto nb = to_size(c, "multiparam.boxes");
  const auto radius = static_cast<std::int64_t>(to_size(c, "functions.radius"));
  SplitMix64 rng(seed(c));
  std::vector<std::vector<double>> axes(M, times);
  auto field_of = [&](const LatticeFunction& f) {
    std::vector<Complex> vals(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      const auto idx = index_of(cell);
      std::vector<double> t(M);
      for (std::size_t m = 0; m < M; ++m) t[m] = times[idx[m]];
      vals[cell] = ops::composed_average(blocks, t, f)(origin);
    }
    return seminorms::GridField(axes, vals);
  };
  auto random_boxes = [&]() {
    std::vector<std::vector<double>> per(M);
    std::size_t L = static_cast<std::size_t>(rng.integer(2, static_cast<std::int64_t>(g) + 1));
    for (std::size_t m = 0; m < M; ++m) {
      std::vector<double> pool = times;
      pool.push_back(times.back() + 1.0);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(L);
      std::sort(pool.begin(), pool.end());
      per[m] = pool;
    }
    std::vector<std::vector<double>> pts(L, std::vector<double>(M));
    for (std::size_t j = 0; j < L; ++j)
      for (std::size_t m = 0; m < M; ++m) pts[j][m] = per[m][j];
    return seminorms::BoxSequence(pts);
  };

  ExperimentReport osc("oscillation", {"function", "l2_norm", "max_oscillation", "max_ratio"});
  for (std::size_t i = 0; i < nf; ++i) {
    const auto f = random_function(rng, M, radius, false);
    const auto field = field_of(f);
    double worst = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto I = random_boxes();
      worst = std::max(worst, seminorms::multi_oscillation(field, I, I.size() - 1, 2.0));
    }
    osc.add_row({static_cast<double>(i), f.norm(2.0), worst, worst / f.norm(2.0)});
  }
  // f = 1 on a box holding every shift: the field is constant.
  LatticeFunction one(M);
  box_points(M, static_cast<std::int64_t>(std::ceil(times.back())), [&](const Point& x) { one.set(x, 1.0); });
  const auto flat = field_of(one);
  double const_osc = 0.0;
  for (std::size_t b = 0; b < std::max<std::size_t>(nb, 1); ++b) {
    const auto I = random_boxes();
    const_osc = std::max(const_osc, seminorms::multi_oscillation(flat, I, I.size() - 1, 2.0));
  }
  osc.set_fit("constant_oscillation", const_osc);
  osc.set_verdict("constant_vanishes", const_osc <= 1e-12);
  r.add_part(std::move(osc));
  return r;
}

// ---------------------------------------------------------------------------

ExperimentReport arith_checks(std::uint64_t seed_value) {
  ExperimentReport r("arith", {"N", "divisor_closed", "lcm_bound", "monotone"});
  bool closed = true, lcm_ok = true, mono = true;
  for (std::uint64_t N = 1; N <= 100; ++N) {
    const auto set = arith::denominator_set(N);
    bool c = true;
    for (auto q : set.members())
      for (std::uint64_t dv = 1; dv <= q; ++dv)
        if (q % dv == 0 && !set.contains(dv)) c = false;
    bool l = true;
    if (N <= 30) {
      arith::Integer three = 1;
      for (std::uint64_t i = 0; i < N; ++i) three *= 3;
      l = set.lcm() <= three;
    }
    bool m = true;
    if (N > 1) {
      const auto prev = arith::denominator_set(N - 1);
      for (auto q : prev.members()) m = m && set.contains(q);
    }
    closed = closed && c;
    lcm_ok = lcm_ok && l;
    mono = mono && m;
    r.add_row({static_cast<double>(N), c ? 1.0 : 0.0, l ? 1.0 : 0.0, m ? 1.0 : 0.0});
  }
  r.set_verdict("divisor_closure", closed);
  r.set_verdict("lcm_bound", lcm_ok);
  r.set_verdict("monotone", mono);

  bool partition = true, reps = true;
  for (std::size_t m = 1; m <= 2; ++m) {
    for (std::uint64_t S = 2; S <= 16; S *= 2) {
      std::set<arith::ReducedFraction> uni;
      std::size_t total = 0;
      for (std::uint64_t s = 2; s <= S; s *= 2) {
        for (const auto& f : arith::annuli_fraction_set(s, 1, m)) {
          uni.insert(f);
          ++total;
        }
      }
      const auto full = arith::fraction_set(S, m);
      partition = partition && total == uni.size() && uni == std::set<arith::ReducedFraction>(full.begin(), full.end());
      for (const auto& f : full)
        for (std::size_t i = 0; i < m; ++i) {
          const double x = f.torus_rep[i];
          const double diff = static_cast<double>(f.numerators[i]) / static_cast<double>(f.denominator) - x;
          reps = reps && x >= -0.5 && x < 0.5 && std::abs(diff - std::round(diff)) < 1e-12;
        }
    }
  }
  r.set_verdict("annuli_partition", partition);
  r.set_verdict("torus_representatives", reps);

  bool sieve = true;
  SplitMix64 rng(seed_value);
  for (int i = 0; i < 20; ++i) {
    const double bound = rng.uniform(0.0, 2000.0);
    std::vector<std::int64_t> expect;
    for (std::int64_t n = 2; n <= bound; ++n) {
      bool p = true;
      for (std::int64_t dv = 2; dv * dv <= n; ++dv) p = p && n % dv != 0;
      if (p) expect.push_back(n);
    }
    sieve = sieve && arith::sieve_primes(bound).primes() == expect;
  }
  r.set_verdict("sieve_trial_division", sieve);
  return r;
}

ExperimentReport poly_checks(std::uint64_t seed_value) {
  ExperimentReport r("poly", {"map", "points", "lift_mismatches"});
  const char* maps[] = {"n^2", "3*n^3 - n", "n1 + n2^2; n1*n2", "2*n1^2*n2 - n2^3 + n1", "n1*n2*n3; n3^2 - n1"};
  bool ok = true;
  for (std::size_t mi = 0; mi < std::size(maps); ++mi) {
    const auto P = poly::parse_polynomial_map(maps[mi]);
    const auto gamma = poly::gamma_set(P.source_dim(), P.degree());
    const auto lift = P.lift(gamma);
    std::size_t bad = 0, n = 0;
    box_points(P.source_dim(), 5, [&](const Point& x) {
      const auto q = poly::canonical_eval(gamma, x);
      const auto direct = P.eval(x);
      for (std::size_t j = 0; j < P.target_dim(); ++j) {
        arith::Integer s = 0;
        for (std::size_t g = 0; g < gamma.size(); ++g) s += lift[j][g] * q[g];
        bad += s != direct[j];
      }
      ++n;
    });
    ok = ok && bad == 0;
    r.add_row({static_cast<double>(mi), static_cast<double>(n), static_cast<double>(bad)});
  }
  r.set_verdict("lifting_consistency", ok);

  SplitMix64 rng(seed_value);
  const poly::DegreeMatrix A(poly::gamma_set(2, 3));
  bool group = true;
  for (int i = 0; i < 200; ++i) {
    const double s = rng.uniform(0.1, 3.0), t = rng.uniform(0.1, 3.0);
    std::vector<double> v(A.size());
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    const auto lhs = poly::scale(A, s * t, v);
    const auto rhs = poly::scale(A, s, poly::scale(A, t, v));
    for (std::size_t j = 0; j < v.size(); ++j)
      group = group && std::abs(lhs[j] - rhs[j]) <= 1e-12 * std::max(1.0, std::abs(lhs[j]));
  }
  r.set_verdict("scaling_group_action", group);
  return r;
}

ExperimentReport region_checks(std::uint64_t seed_value) {
  ExperimentReport r("region", {"shape", "k", "split_primes", "monotone", "sandwich", "annulus"});
  const std::vector<std::pair<region::ConvexRegion, region::Split>> cases = {
      {region::ConvexRegion::ball(1), {1, 0}},
      {region::ConvexRegion::ball(1), {0, 1}},
      {region::ConvexRegion::ball(2), {1, 1}},
      {region::ConvexRegion::box(2), {2, 0}},
      {region::ConvexRegion::ellipsoid({1.0, 0.5}), {2, 0}},
      {region::ConvexRegion::half_spaces(2, {{1.0, 1.0}}, {0.5}), {2, 0}},
      {region::ConvexRegion::ball(3), {2, 1}},
  };
  const auto primes = arith::sieve_primes(64.0);
  bool all_mono = true, all_sand = true, all_ann = true;
  for (const auto& [omega, split] : cases) {
    bool mono = true, sand = true, ann = true;
    const double ts[] = {1.5, 2.0, 3.7, 6.0, 9.5, 16.0};
    std::vector<Point> prev;
    for (double t : ts) {
      auto pts = region::lattice_points(omega, t, split, primes);
      std::set<Point> cur(pts.begin(), pts.end());
      for (const auto& x : prev) mono = mono && cur.count(x);
      for (const auto& x : pts) {
        double n2 = 0.0;
        for (auto v : x) n2 += static_cast<double>(v) * static_cast<double>(v);
        sand = sand && std::sqrt(n2) < t;
      }
      if (split.prime_dims == 0) {
        const auto R = static_cast<std::int64_t>(std::ceil(t));
        box_points(omega.dimension(), R, [&](const Point& x) {
          double n2 = 0.0;
          for (auto v : x) n2 += static_cast<double>(v) * static_cast<double>(v);
          if (std::sqrt(n2) < omega.inner_radius() * t) sand = sand && cur.count(x);
        });
      }
      prev = pts;
    }
    for (std::size_t i = 0; i + 1 < std::size(ts); ++i) {
      const auto inner = region::lattice_points(omega, ts[i], split, primes);
      const auto outer = region::lattice_points(omega, ts[i + 1], split, primes);
      std::set<Point> diff(outer.begin(), outer.end());
      for (const auto& x : inner) diff.erase(x);
      const auto a = region::annulus_points(region::RegionAnnulus(omega, ts[i], ts[i + 1]), split, primes);
      ann = ann && std::set<Point>(a.begin(), a.end()) == diff && a.size() == diff.size();
    }
    const auto cert = omega.verify_sandwich(2000, seed_value);
    sand = sand && cert.pass;
    all_mono = all_mono && mono;
    all_sand = all_sand && sand;
    all_ann = all_ann && ann;
    r.add_row({static_cast<double>(omega.shape()), static_cast<double>(omega.dimension()),
               static_cast<double>(split.prime_dims), mono ? 1.0 : 0.0, sand ? 1.0 : 0.0, ann ? 1.0 : 0.0});
  }
  r.set_verdict("dilation_monotone", all_mono);
  r.set_verdict("sandwich", all_sand);
  r.set_verdict("annulus_difference", all_ann);
  return r;
}

ExperimentReport kernel_checks(std::uint64_t seed_value) {
  ExperimentReport r("kernel", {"case", "k", "r", "R", "integral", "pass", "size_ratio", "lipschitz_ratio"});
  struct Case {
    const char* name;
    std::size_t k;
  };
  const Case cases[] = {{"hilbert", 1}, {"riesz_1", 2}, {"riesz_2", 2}, {"odd_homogeneous", 2}, {"riesz_3", 3}};
  const double radii[][2] = {{1.0, 2.0}, {0.5, 4.0}, {0.1, 10.0}};
  bool cancel = true, size = true, lip = true;
  for (std::size_t ci = 0; ci < std::size(cases); ++ci) {
    const auto K = kernel::builtin_kernel(cases[ci].name, cases[ci].k);
    const auto reg = kernel::check_size_and_lipschitz(K, 10000, seed_value);
    size = size && reg.max_size_ratio <= 2.0 * K.size_constant();
    lip = lip && reg.max_lipschitz_ratio <= 2.0 * K.lipschitz_constant();
    for (const auto& rr : radii) {
      const auto omega = region::ConvexRegion::ball(cases[ci].k);
      const auto rep = kernel::check_cancellation(K, omega, rr[0], rr[1], 1e-8);
      cancel = cancel && rep.pass;
      r.add_row({static_cast<double>(ci), static_cast<double>(cases[ci].k), rr[0], rr[1], std::abs(rep.integral),
                 rep.pass ? 1.0 : 0.0, reg.max_size_ratio, reg.max_lipschitz_ratio});
    }
  }
  r.set_verdict("odd_cancellation", cancel);
  r.set_verdict("size_condition", size);
  r.set_verdict("lipschitz_condition", lip);

  // Negative control: |x|^{-1} over 1 < |x| < 2 integrates to 2 log 2.
  const auto even = kernel::builtin_kernel("even_control", 1);
  const auto rep = kernel::check_cancellation(even, region::ConvexRegion::ball(1), 1.0, 2.0, 1e-8);
  r.set_fit("negative_control_integral", rep.integral.real());
  r.set_verdict("negative_control_fails", !rep.pass);
  r.set_verdict("negative_control_value", std::abs(rep.integral.real() - 2.0 * std::numbers::ln2) <= 1e-6);
  return r;
}

ExperimentReport operator_checks(std::uint64_t seed_value) {
  ExperimentReport r("operators", {"case", "t", "l1_delta", "lp_ratio", "sup_ratio", "min_nonneg"});
  const std::vector<ops::OperatorConfig> cfgs = {
      {poly::parse_polynomial_map("n"), region::ConvexRegion::ball(1), {1, 0}, std::nullopt},
      {poly::parse_polynomial_map("n^2"), region::ConvexRegion::ball(1), {1, 0}, std::nullopt},
      {poly::parse_polynomial_map("n"), region::ConvexRegion::ball(1), {0, 1}, std::nullopt},
      {poly::parse_polynomial_map("n1 + n2^2; n1*n2"), region::ConvexRegion::ball(2), {1, 1}, std::nullopt},
  };
  SplitMix64 rng(seed_value);
  bool l1 = true, lp = true, sup = true, pos = true;
  for (std::size_t ci = 0; ci < cfgs.size(); ++ci) {
    const auto& cfg = cfgs[ci];
    const std::size_t d = cfg.map.target_dim();
    for (double t : {3.0, 8.0, 20.0}) {
      const auto delta = ops::average(cfg, t, LatticeFunction::delta(d));
      double lpr = 0.0, supr = 0.0, mn = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 3; ++i) {
        const auto f = random_function(rng, d, 4, false);
        const auto af = ops::average(cfg, t, f);
        for (double p : {1.0, 1.5, 2.0, 4.0}) lpr = std::max(lpr, af.norm(p) / f.norm(p));
        supr = std::max(supr, af.sup_norm() / f.sup_norm());
        const auto g = random_function(rng, d, 4, true);
        const auto ag = ops::average(cfg, t, g);
        for (const auto& [x, v] : ag.support())
          mn = std::min(mn, v.imag() == 0.0 ? v.real() : -1.0);
      }
      l1 = l1 && std::abs(delta.norm(1.0) - 1.0) <= 1e-12;
      lp = lp && lpr <= 1.0 + kTol;
      sup = sup && supr <= 1.0 + kTol;
      pos = pos && mn >= 0.0;
      r.add_row({static_cast<double>(ci), t, delta.norm(1.0), lpr, supr, mn});
    }
  }
  r.set_verdict("l1_normalization", l1);
  r.set_verdict("lp_contraction", lp);
  r.set_verdict("sup_contraction", sup);
  r.set_verdict("positivity", pos);

  const ops::OperatorConfig lin = cfgs[0];
  const ops::OperatorConfig sq = cfgs[1];
  const std::vector<ops::BlockConfig> blocks = {{lin, {0}}, {sq, {1}}};
  const std::vector<ops::BlockConfig> swapped = {{sq, {1}}, {lin, {0}}};
  bool swap = true;
  for (int i = 0; i < 4; ++i) {
    const auto f = random_function(rng, 2, 3, false);
    const double t[2] = {rng.uniform(1.5, 6.0), rng.uniform(1.5, 6.0)};
    const double ts[2] = {t[1], t[0]};
    swap = swap && ops::composed_average(blocks, t, f) == ops::composed_average(swapped, ts, f);
  }
  r.set_verdict("composition_commutes", swap);
  return r;
}

ExperimentReport gauss_modulus_check(std::uint64_t q_max, double tol) {
  const auto map = poly::parse_polynomial_map("n^2");
  ExperimentReport r("gauss_modulus", {"q", "max_abs_G", "min_abs_G", "expected"});
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 3; q <= q_max; ++q)
    if (arith::is_prime(q)) qs.push_back(q);
  const auto rows = parallel_map<std::vector<double>>(qs.size(), [&](std::size_t i) {
    const auto q = static_cast<std::int64_t>(qs[i]);
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (std::int64_t a = 1; a < q; ++a) {
      const double g = std::abs(fourier::gauss_sum(arith::make_fraction({a}, q), map, {1, 0}).value);
      mx = std::max(mx, g);
      mn = std::min(mn, g);
    }
    return std::vector<double>{static_cast<double>(q), mx, mn, 1.0 / std::sqrt(static_cast<double>(q))};
  });
  bool ok = true;
  for (const auto& row : rows) {
    ok = ok && std::abs(row[1] - row[3]) <= tol && std::abs(row[2] - row[3]) <= tol;
    r.add_row(row);
  }
  r.param("tolerance", tol);
  r.set_verdict("modulus", ok);
  return r;
}

ExperimentReport verify_suite(const Config& c) {
  const auto s = seed(c);
  ExperimentReport r("verify", {});
  stamp(r, c);
  r.add_part(arith_checks(s));
  r.add_part(poly_checks(s));
  r.add_part(region_checks(s));
  r.add_part(kernel_checks(s));
  r.add_part(operator_checks(s));
  r.add_part(seminorms_suite(c));
  r.add_part(gauss_modulus_check(199));
  r.add_part(sinc_check(1000, 1e-8, quad_options(c)));

  const ops::OperatorConfig lin{poly::parse_polynomial_map("n"), region::ConvexRegion::ball(1), {1, 0}, std::nullopt};
  std::vector<std::size_t> ns(12);
  std::iota(ns.begin(), ns.end(), std::size_t{1});
  std::vector<std::vector<double>> grid;
  for (double x : log_grid(1e-6, 0.5, 200)) grid.push_back({x});
  fourier::EnvelopeOptions eo;
  eo.quad = quad_options(c);
  auto env = fourier::envelope_check(lin, ns, grid, eo);
  env.suite = "envelope";
  r.add_part(std::move(env));
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"averages", "cotlar",  "seminorms", "gauss",      "weyl",
                                                 "multiplier", "envelope", "maximal", "multiparam", "verify"};
  return names;
}

ExperimentReport run_suite(const std::string& name, const Config& c) {
  if (name == "averages") return averages_suite(c);
  if (name == "cotlar") return cotlar_suite(c);
  if (name == "seminorms") return seminorms_suite(c);
  if (name == "gauss") return gauss_suite(c);
  if (name == "weyl") return weyl_suite(c);
  if (name == "multiplier") return multiplier_suite(c);
  if (name == "envelope") return envelope_suite(c);
  if (name == "maximal") return maximal_sweep(c);
  if (name == "multiparam") return multiparam_suite(c);
  if (name == "verify") return verify_suite(c);
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace primelab::cli
