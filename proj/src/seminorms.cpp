#include "primelab/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "primelab/errors.hpp"

namespace primelab::seminorms {

namespace {

void check_times(std::span<const double> t, const char* what) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i])) throw DomainError(std::string(what) + " must be finite");
    if (i && !(t[i] > t[i - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
  }
}

void check_r(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw DomainError("r must lie in [1, inf)");
}

// Index of the first time >= x, or times.size().
std::size_t first_at_or_after(std::span<const double> times, double x) {
  return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), x) - times.begin());
}

}  // namespace

SampledPath::SampledPath(std::vector<double> times, std::vector<Complex> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) throw DomainError("path times and values differ in length");
  check_times(times_, "path times");
}

SampledPath SampledPath::indexed(std::vector<Complex> values) {
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  return SampledPath(std::move(t), std::move(values));
}

std::string SampledPath::to_csv() const {
  std::string out = "t,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", times_[i], values_[i].real(), values_[i].imag());
    out += buf;
  }
  return out;
}

SampledPath SampledPath::from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<double> t;
  std::vector<Complex> v;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (lineno == 1 && line.rfind("t", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b, c;
    if (!(ls >> a >> b >> c)) throw ConfigError("expected t, re, im", lineno);
    t.push_back(a);
    v.emplace_back(b, c);
  }
  return SampledPath(std::move(t), std::move(v));
}

std::size_t jump_count(const SampledPath& path, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const auto& f = path.values();
  std::vector<std::size_t> best(f.size(), 0);
  std::size_t answer = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (std::abs(f[j] - f[i]) >= lambda) best[j] = std::max(best[j], best[i] + 1);
    answer = std::max(answer, best[j]);
  }
  return answer;
}

double variation(const SampledPath& path, double r) {
  check_r(r);
  const auto& f = path.values();
  if (f.size() < 2) return 0.0;
  std::vector<double> best(f.size(), 0.0);
  double answer = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) best[j] = std::max(best[j], best[i] + std::pow(std::abs(f[j] - f[i]), r));
    answer = std::max(answer, best[j]);
  }
  return std::pow(answer, 1.0 / r);
}

double oscillation(const SampledPath& path, std::span<const double> I, std::size_t N, double r) {
  check_r(r);
  check_times(I, "oscillation sequence");
  if (I.size() < N + 1) throw DomainError("oscillation sequence needs at least N + 1 points");
  const auto& t = path.times();
  const auto& f = path.values();
  double total = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t lo = first_at_or_after(t, I[j]);
    const std::size_t hi = first_at_or_after(t, I[j + 1]);
    double sup = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sup = std::max(sup, std::abs(f[i] - f[lo]));
    total += std::pow(sup, r);
  }
  return std::pow(total, 1.0 / r);
}

GridField::GridField(std::vector<std::vector<double>> axes, std::vector<Complex> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw DomainError("grid field needs at least one axis");
  std::size_t n = 1;
  for (const auto& a : axes_) {
    if (a.empty()) throw DomainError("grid axis is empty");
    check_times(a, "grid axis");
    n *= a.size();
  }
  if (n != values_.size()) throw DomainError("grid field value count does not match the axes");
}

Complex GridField::at(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t m = 0; m < axes_.size(); ++m) flat = flat * axes_[m].size() + index[m];
  return values_[flat];
}

BoxSequence::BoxSequence(std::vector<std::vector<double>> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("box sequence is empty");
  const std::size_t M = points_.front().size();
  if (M == 0) throw DomainError("box sequence points need at least one coordinate");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (points_[j].size() != M) throw DomainError("box sequence points differ in dimension");
    if (j)
      for (std::size_t m = 0; m < M; ++m)
        if (!(points_[j][m] > points_[j - 1][m]))
          throw DomainError("box sequence must increase strictly in every coordinate");
  }
}

double multi_oscillation(const GridField& field, const BoxSequence& I, std::size_t N, double r) {
  check_r(r);
  const std::size_t M = field.parameters();
  if (I.parameters() != M) throw DomainError("box sequence dimension does not match the field");
  if (I.size() < N + 1) throw DomainError("box sequence needs at least N + 1 points");
  const auto& axes = field.axes();
  double total = 0.0;
  std::vector<std::size_t> lo(M), hi(M), idx(M);
  for (std::size_t j = 0; j < N; ++j) {
    bool empty = false;
    for (std::size_t m = 0; m < M; ++m) {
      lo[m] = first_at_or_after(axes[m], I[j][m]);
      hi[m] = first_at_or_after(axes[m], I[j + 1][m]);
      empty = empty || lo[m] >= hi[m];
    }
    if (empty) continue;
    const Complex base = field.at(lo);
    double sup = 0.0;
    idx = lo;
    for (;;) {
      sup = std::max(sup, std::abs(field.at(idx) - base));
      std::size_t m = M;
      while (m > 0 && ++idx[m - 1] == hi[m - 1]) {
        idx[m - 1] = lo[m - 1];
        --m;
      }
      if (m == 0) break;
    }
    total += std::pow(sup, r);
  }
  return std::pow(total, 1.0 / r);
}

RademacherMenshovReport rademacher_menshov_check(std::span<const Complex> a, std::uint64_t k, unsigned m, bool clip) {
  if (m >= 63) throw SizeLimitError("2^m exceeds the index range", 62);
  const std::uint64_t top = std::uint64_t{1} << m;
  if (k >= top) throw DomainError("Rademacher-Menshov needs k < 2^m");
  if (a.size() != top - k + 1) throw DomainError("sequence must cover [k, 2^m]");
  auto at = [&](std::uint64_t n) { return a[n - k]; };

  RademacherMenshovReport rep;
  for (const auto& v : a) rep.lhs = std::max(rep.lhs, std::abs(v));

  double sum = 0.0;
  for (unsigned i = 0; i <= m; ++i) {
    const std::uint64_t len = std::uint64_t{1} << i;
    double sq = 0.0;
    for (std::uint64_t j = 0; j < (top >> i); ++j) {
      std::uint64_t u = j * len;
      const std::uint64_t v = u + len;
      if (v <= k) continue;
      if (u < k) {
        if (!clip) continue;
        u = k;
      }
      sq += std::norm(at(v) - at(u));
    }
    sum += std::sqrt(sq);
  }
  rep.rhs = std::abs(at(k)) + std::sqrt(2.0) * sum;
  rep.pass = rep.lhs <= rep.rhs + kInequalityTol;
  return rep;
}

double oracle_variation(const SampledPath& path, double r) {
  check_r(r);
  const std::size_t n = path.size();
  if (n > kOracleVariationCap) throw SizeLimitError("oracle_variation path too long", kOracleVariationCap);
  const auto& f = path.values();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cost[i * n + j] = std::pow(std::abs(f[j] - f[i]), r);
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double s = 0.0;
    int prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (prev >= 0) s += cost[static_cast<std::size_t>(prev) * n + i];
      prev = static_cast<int>(i);
    }
    best = std::max(best, s);
  }
  return std::pow(best, 1.0 / r);
}

std::size_t oracle_jump(const SampledPath& path, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const std::size_t n = path.size();
  if (n > kOracleJumpCap) throw SizeLimitError("oracle_jump path too long", kOracleJumpCap);
  const auto& f = path.values();
  std::vector<char> big(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) big[i * n + j] = std::abs(f[j] - f[i]) >= lambda;
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t count = 0;
    int prev = -1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (prev >= 0) {
        ok = big[static_cast<std::size_t>(prev) * n + i];
        ++count;
      }
      prev = static_cast<int>(i);
    }
    if (ok) best = std::max(best, count);
  }
  return best;
}

}  // namespace primelab::seminorms
