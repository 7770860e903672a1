#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primelab/arith.hpp"

namespace primelab::region {

using Point = std::vector<std::int64_t>;

// (k', k''): the first k' coordinates range over Z, the last k'' over +-P.
struct Split {
  std::size_t integer_dims = 0;
  std::size_t prime_dims = 0;

  std::size_t total() const noexcept { return integer_dims + prime_dims; }
  friend bool operator==(const Split&, const Split&) = default;
};

enum class Shape { Ball, Box, Ellipsoid, HalfSpaces, Custom };

std::string shape_name(Shape s);

struct SandwichReport {
  double min_radial = 0.0;
  double max_radial = 0.0;
  std::size_t convexity_violations = 0;
  bool pass = false;
};

// Open bounded convex Omega with B(0, c) inside Omega inside B(0, 1).
class ConvexRegion {
 public:
  using Membership = std::function<bool(std::span<const double>)>;

  static ConvexRegion ball(std::size_t k);
  // Open cube of half-side 1/sqrt(k).
  static ConvexRegion box(std::size_t k);
  // Semi-axes in (0, 1].
  static ConvexRegion ellipsoid(std::vector<double> semi_axes);
  // {z : |z| < 1, normal_i . z < offset_i}; offsets must be positive.
  static ConvexRegion half_spaces(std::size_t k, std::vector<std::vector<double>> normals,
                                  std::vector<double> offsets);
  // User predicate intersected with B(0, 1); the inner radius is trusted
  // (verify_sandwich spot-checks it).
  static ConvexRegion custom(std::size_t k, Membership member, double inner_radius,
                             bool centrally_symmetric = false);

  std::size_t dimension() const noexcept { return k_; }
  Shape shape() const noexcept { return shape_; }
  double inner_radius() const noexcept { return inner_radius_; }
  bool centrally_symmetric() const noexcept { return symmetric_; }
  const std::vector<double>& parameters() const noexcept { return params_; }

  // z in Omega.
  bool contains_unit(std::span<const double> z) const;
  // x in Omega_t, i.e. x / t in Omega.
  bool contains(double t, std::span<const double> x) const;

  // Open parameter interval {s : origin + s dir in Omega}, if nonempty.
  std::optional<std::pair<double, double>> line_section(std::span<const double> origin,
                                                        std::span<const double> dir) const;

  // sup{s > 0 : s theta in Omega} for a unit vector theta.
  double radial(std::span<const double> theta) const;

  // Lebesgue measure of Omega (closed form where available, else quadrature).
  double volume() const;

  SandwichReport verify_sandwich(std::size_t samples, std::uint64_t seed) const;

  std::string describe() const;

 private:
  ConvexRegion(std::size_t k, Shape shape) : k_(k), shape_(shape) {}

  std::optional<std::pair<double, double>> ball_section(std::span<const double> o,
                                                        std::span<const double> d,
                                                        std::span<const double> axes) const;

  std::size_t k_;
  Shape shape_;
  double inner_radius_ = 1.0;
  bool symmetric_ = true;
  std::vector<double> params_;
  std::vector<std::vector<double>> normals_;
  Membership member_;
};

bool contains(const ConvexRegion& omega, double t, std::span<const double> x);

// Calls visit for each (n, p) in Z^{k'} x (+-P)^{k''} inside Omega_t, in
// lexicographic order of coordinates.
void for_each_lattice_point(const ConvexRegion& omega, double t, Split split,
                            const arith::SignedPrimeSet& primes,
                            const std::function<void(const Point&)>& visit);

std::vector<Point> lattice_points(const ConvexRegion& omega, double t, Split split,
                                  const arith::SignedPrimeSet& primes);

// Omega_R minus Omega_r.
class RegionAnnulus {
 public:
  RegionAnnulus(ConvexRegion base, double inner, double outer);

  const ConvexRegion& base() const noexcept { return base_; }
  double inner() const noexcept { return inner_; }
  double outer() const noexcept { return outer_; }
  bool contains(std::span<const double> x) const;

 private:
  ConvexRegion base_;
  double inner_;
  double outer_;
};

std::vector<Point> annulus_points(const RegionAnnulus& annulus, Split split,
                                  const arith::SignedPrimeSet& primes);

}  // namespace primelab::region
