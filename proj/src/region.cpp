#include "primelab/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "primelab/errors.hpp"
#include "primelab/quadrature.hpp"
#include "primelab/rng.hpp"

namespace primelab::region {

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::Ball: return "ball";
    case Shape::Box: return "box";
    case Shape::Ellipsoid: return "ellipsoid";
    case Shape::HalfSpaces: return "halfspaces";
    case Shape::Custom: return "custom";
  }
  return "unknown";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

using Interval = std::optional<std::pair<double, double>>;

Interval intersect(Interval a, double lo, double hi) {
  if (!a) return a;
  a->first = std::max(a->first, lo);
  a->second = std::min(a->second, hi);
  if (!(a->first < a->second)) return std::nullopt;
  return a;
}

}  // namespace

ConvexRegion ConvexRegion::ball(std::size_t k) {
  if (k == 0) throw DomainError("region dimension must be positive");
  ConvexRegion r(k, Shape::Ball);
  r.inner_radius_ = 1.0;
  return r;
}

ConvexRegion ConvexRegion::box(std::size_t k) {
  if (k == 0) throw DomainError("region dimension must be positive");
  ConvexRegion r(k, Shape::Box);
  r.inner_radius_ = 1.0 / std::sqrt(static_cast<double>(k));
  r.params_ = {r.inner_radius_};
  return r;
}

ConvexRegion ConvexRegion::ellipsoid(std::vector<double> semi_axes) {
  if (semi_axes.empty()) throw DomainError("region dimension must be positive");
  for (double a : semi_axes)
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("ellipsoid semi-axes must lie in (0, 1]");
  ConvexRegion r(semi_axes.size(), Shape::Ellipsoid);
  r.inner_radius_ = *std::min_element(semi_axes.begin(), semi_axes.end());
  r.params_ = std::move(semi_axes);
  return r;
}

ConvexRegion ConvexRegion::half_spaces(std::size_t k, std::vector<std::vector<double>> normals,
                                       std::vector<double> offsets) {
  if (k == 0) throw DomainError("region dimension must be positive");
  if (normals.size() != offsets.size()) throw DomainError("half_spaces: normals and offsets differ in count");
  ConvexRegion r(k, Shape::HalfSpaces);
  r.inner_radius_ = 1.0;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != k) throw DomainError("half_spaces: normal has wrong dimension");
    const double len = std::sqrt(dot(normals[i], normals[i]));
    if (!(len > 0.0)) throw DomainError("half_spaces: zero normal");
    if (!(offsets[i] > 0.0)) throw DomainError("half_spaces: offsets must be positive so 0 is interior");
    r.inner_radius_ = std::min(r.inner_radius_, offsets[i] / len);
  }
  r.symmetric_ = normals.empty();
  r.normals_ = std::move(normals);
  r.params_ = std::move(offsets);
  return r;
}

ConvexRegion ConvexRegion::custom(std::size_t k, Membership member, double inner_radius, bool centrally_symmetric) {
  if (k == 0) throw DomainError("region dimension must be positive");
  if (!member) throw DomainError("custom region needs a membership predicate");
  if (!(inner_radius > 0.0 && inner_radius <= 1.0)) throw DomainError("inner radius must lie in (0, 1]");
  ConvexRegion r(k, Shape::Custom);
  r.inner_radius_ = inner_radius;
  r.symmetric_ = centrally_symmetric;
  r.member_ = std::move(member);
  return r;
}

bool ConvexRegion::contains_unit(std::span<const double> z) const {
  if (z.size() != k_) throw DomainError("region membership: dimension mismatch");
  switch (shape_) {
    case Shape::Ball: return dot(z, z) < 1.0;
    case Shape::Box:
      return std::all_of(z.begin(), z.end(), [h = params_[0]](double v) { return std::abs(v) < h; });
    case Shape::Ellipsoid: {
      double s = 0.0;
      for (std::size_t i = 0; i < k_; ++i) s += (z[i] / params_[i]) * (z[i] / params_[i]);
      return s < 1.0;
    }
    case Shape::HalfSpaces:
      if (!(dot(z, z) < 1.0)) return false;
      for (std::size_t i = 0; i < normals_.size(); ++i)
        if (!(dot(normals_[i], z) < params_[i])) return false;
      return true;
    case Shape::Custom: return dot(z, z) < 1.0 && member_(z);
  }
  return false;
}

bool ConvexRegion::contains(double t, std::span<const double> x) const {
  if (!(t > 0.0)) throw DomainError("dilation parameter must be positive");
  if (x.size() != k_) throw DomainError("region membership: dimension mismatch");
  std::vector<double> z(x.begin(), x.end());
  for (double& v : z) v /= t;
  return contains_unit(z);
}

bool contains(const ConvexRegion& omega, double t, std::span<const double> x) { return omega.contains(t, x); }

std::optional<std::pair<double, double>> ConvexRegion::ball_section(std::span<const double> o,
                                                                    std::span<const double> d,
                                                                    std::span<const double> axes) const {
  double a = 0.0, b = 0.0, c = -1.0;
  for (std::size_t i = 0; i < k_; ++i) {
    const double s = axes.empty() ? 1.0 : axes[i];
    const double oi = o[i] / s, di = d[i] / s;
    a += di * di;
    b += 2.0 * oi * di;
    c += oi * oi;
  }
  if (!(a > 0.0)) return c < 0.0 ? Interval(std::pair{-std::numeric_limits<double>::infinity(),
                                                      std::numeric_limits<double>::infinity()})
                                  : std::nullopt;
  const double disc = b * b - 4.0 * a * c;
  if (!(disc > 0.0)) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Stable roots.
  const double qv = -0.5 * (b + std::copysign(sq, b));
  double r1 = qv / a, r2 = qv != 0.0 ? c / qv : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return std::pair{r1, r2};
}

std::optional<std::pair<double, double>> ConvexRegion::line_section(std::span<const double> o,
                                                                    std::span<const double> d) const {
  if (o.size() != k_ || d.size() != k_) throw DomainError("line_section: dimension mismatch");
  switch (shape_) {
    case Shape::Ball: return ball_section(o, d, {});
    case Shape::Ellipsoid: return ball_section(o, d, params_);
    case Shape::Box: {
      Interval iv = std::pair{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
      const double h = params_[0];
      for (std::size_t i = 0; i < k_; ++i) {
        if (d[i] == 0.0) {
          if (!(std::abs(o[i]) < h)) return std::nullopt;
          continue;
        }
        double lo = (-h - o[i]) / d[i], hi = (h - o[i]) / d[i];
        if (lo > hi) std::swap(lo, hi);
        iv = intersect(iv, lo, hi);
      }
      return iv;
    }
    case Shape::HalfSpaces: {
      Interval iv = ball_section(o, d, {});
      for (std::size_t i = 0; i < normals_.size() && iv; ++i) {
        const double nd = dot(normals_[i], d), no = dot(normals_[i], o);
        if (nd == 0.0) {
          if (!(no < params_[i])) return std::nullopt;
        } else if (nd > 0.0) {
          iv = intersect(iv, -std::numeric_limits<double>::infinity(), (params_[i] - no) / nd);
        } else {
          iv = intersect(iv, (params_[i] - no) / nd, std::numeric_limits<double>::infinity());
        }
      }
      return iv;
    }
    case Shape::Custom: {
      const Interval outer = ball_section(o, d, {});
      if (!outer) return std::nullopt;
      std::vector<double> z(k_);
      auto member_at = [&](double s) {
        for (std::size_t i = 0; i < k_; ++i) z[i] = o[i] + s * d[i];
        return contains_unit(z);
      };
      constexpr int scan = 256;
      std::optional<double> inside;
      for (int i = 1; i < scan && !inside; ++i) {
        const double s = outer->first + (outer->second - outer->first) * i / scan;
        if (member_at(s)) inside = s;
      }
      if (!inside) return std::nullopt;
      double lo_out = outer->first, lo_in = *inside;
      double hi_in = *inside, hi_out = outer->second;
      for (int it = 0; it < 64; ++it) {
        const double m1 = 0.5 * (lo_out + lo_in);
        (member_at(m1) ? lo_in : lo_out) = m1;
        const double m2 = 0.5 * (hi_in + hi_out);
        (member_at(m2) ? hi_in : hi_out) = m2;
      }
      return std::pair{lo_in, hi_in};
    }
  }
  return std::nullopt;
}

double ConvexRegion::radial(std::span<const double> theta) const {
  const std::vector<double> origin(k_, 0.0);
  const auto iv = line_section(origin, theta);
  if (!iv || iv->second <= 0.0) throw DomainError("radial: origin is not interior to the region");
  return iv->second;
}

double ConvexRegion::volume() const {
  const double kd = static_cast<double>(k_);
  const double ball_vol = std::pow(std::numbers::pi, kd / 2.0) / std::tgamma(kd / 2.0 + 1.0);
  switch (shape_) {
    case Shape::Ball: return ball_vol;
    case Shape::Box: return std::pow(2.0 * params_[0], kd);
    case Shape::Ellipsoid: {
      double v = ball_vol;
      for (double a : params_) v *= a;
      return v;
    }
    case Shape::HalfSpaces:
    case Shape::Custom: {
      quad::Options opts;
      const auto e = quad::integrate_sphere(
          k_, [&](std::span<const double> th) { return quad::Estimate{std::pow(radial(th), kd) / kd, 0.0}; }, opts);
      return e.value.real();
    }
  }
  return 0.0;
}

SandwichReport ConvexRegion::verify_sandwich(std::size_t samples, std::uint64_t seed) const {
  SplitMix64 rng(seed);
  SandwichReport rep;
  rep.min_radial = std::numeric_limits<double>::infinity();
  rep.max_radial = 0.0;
  std::vector<double> th(k_), a(k_), b(k_), m(k_);
  auto random_direction = [&](std::vector<double>& v) {
    double n = 0.0;
    for (auto& c : v) {
      c = rng.normal();
      n += c * c;
    }
    n = std::sqrt(n);
    for (auto& c : v) c /= n;
  };
  for (std::size_t i = 0; i < samples; ++i) {
    random_direction(th);
    const double rho = radial(th);
    rep.min_radial = std::min(rep.min_radial, rho);
    rep.max_radial = std::max(rep.max_radial, rho);
    for (std::size_t j = 0; j < k_; ++j) {
      a[j] = rng.uniform(-1.0, 1.0);
      b[j] = rng.uniform(-1.0, 1.0);
    }
    if (contains_unit(a) && contains_unit(b)) {
      const double lam = rng.uniform();
      for (std::size_t j = 0; j < k_; ++j) m[j] = lam * a[j] + (1.0 - lam) * b[j];
      if (!contains_unit(m)) ++rep.convexity_violations;
    }
  }
  rep.pass = rep.min_radial >= inner_radius_ * (1.0 - 1e-12) && rep.max_radial <= 1.0 + 1e-12 &&
             rep.convexity_violations == 0;
  return rep;
}

std::string ConvexRegion::describe() const {
  std::ostringstream os;
  os << shape_name(shape_) << "(k=" << k_;
  if (shape_ == Shape::Ellipsoid || shape_ == Shape::HalfSpaces) {
    os << ";";
    for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
  }
  os << ")";
  return os.str();
}

namespace {

void check_split(const ConvexRegion& omega, double t, Split split, const arith::SignedPrimeSet& primes) {
  if (!(t > 0.0)) throw DomainError("dilation parameter must be positive");
  if (split.total() != omega.dimension())
    throw DomainError("split k' + k'' = " + std::to_string(split.total()) + " does not match region dimension " +
                      std::to_string(omega.dimension()));
  if (split.prime_dims > 0 && primes.bound() < t)
    throw InsufficientSieve("prime sieve bound " + std::to_string(primes.bound()) + " is below dilation " +
                            std::to_string(t));
}

void enumerate(const ConvexRegion& omega, double t, const std::vector<std::vector<std::int64_t>>& candidates,
               std::size_t pos, double partial, Point& x, std::vector<double>& xr,
               const std::function<void(const Point&)>& visit) {
  const double t2 = t * t;
  if (pos == candidates.size()) {
    if (omega.contains(t, xr)) visit(x);
    return;
  }
  for (std::int64_t v : candidates[pos]) {
    const double vv = static_cast<double>(v);
    const double next = partial + vv * vv;
    if (next >= t2) continue;
    x[pos] = v;
    xr[pos] = vv;
    enumerate(omega, t, candidates, pos + 1, next, x, xr, visit);
  }
}

}  // namespace

void for_each_lattice_point(const ConvexRegion& omega, double t, Split split, const arith::SignedPrimeSet& primes,
                            const std::function<void(const Point&)>& visit) {
  check_split(omega, t, split, primes);
  const auto reach = static_cast<std::int64_t>(std::ceil(t));
  std::vector<std::int64_t> ints;
  for (std::int64_t v = -reach; v <= reach; ++v) ints.push_back(v);
  const std::vector<std::int64_t> signed_primes = split.prime_dims ? primes.signed_primes(t) : std::vector<std::int64_t>{};
  std::vector<std::vector<std::int64_t>> candidates;
  for (std::size_t i = 0; i < split.integer_dims; ++i) candidates.push_back(ints);
  for (std::size_t i = 0; i < split.prime_dims; ++i) candidates.push_back(signed_primes);
  Point x(omega.dimension());
  std::vector<double> xr(omega.dimension());
  enumerate(omega, t, candidates, 0, 0.0, x, xr, visit);
}

std::vector<Point> lattice_points(const ConvexRegion& omega, double t, Split split,
                                  const arith::SignedPrimeSet& primes) {
  std::vector<Point> out;
  for_each_lattice_point(omega, t, split, primes, [&](const Point& p) { out.push_back(p); });
  return out;
}

RegionAnnulus::RegionAnnulus(ConvexRegion base, double inner, double outer)
    : base_(std::move(base)), inner_(inner), outer_(outer) {
  if (!(inner > 0.0 && inner < outer)) throw DomainError("annulus needs 0 < r < R");
}

bool RegionAnnulus::contains(std::span<const double> x) const {
  return base_.contains(outer_, x) && !base_.contains(inner_, x);
}

std::vector<Point> annulus_points(const RegionAnnulus& annulus, Split split, const arith::SignedPrimeSet& primes) {
  std::vector<Point> out;
  std::vector<double> xr(annulus.base().dimension());
  for_each_lattice_point(annulus.base(), annulus.outer(), split, primes, [&](const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i) xr[i] = static_cast<double>(p[i]);
    if (!annulus.base().contains(annulus.inner(), xr)) out.push_back(p);
  });
  return out;
}

}  // namespace primelab::region
