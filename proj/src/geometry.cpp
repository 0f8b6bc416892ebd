#include "manapprox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval entire() { return Interval(-kInf, kInf); }

// 0 * inf is taken as 0, which is the limit value for enclosures.
double mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Interval from_candidates(std::initializer_list<double> values) {
  auto [lo, hi] = std::minmax(values);
  if (std::isnan(lo) || std::isnan(hi)) return entire();
  return Interval(lo, hi);
}

Interval integer_power(const Interval& a, long k) {
  if (k == 0) return Interval::point(1.0);
  if (k < 0) return Interval::point(1.0) / integer_power(a, -k);
  double lo = std::pow(a.lo(), static_cast<double>(k));
  double hi = std::pow(a.hi(), static_cast<double>(k));
  if (k % 2 == 1) return Interval(lo, hi);
  if (a.contains(0.0)) return Interval(0.0, std::max(lo, hi));
  return Interval(std::min(lo, hi), std::max(lo, hi));
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("interval requires lo <= hi, got [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

Interval Interval::hull(const Interval& other) const {
  return Interval(std::min(lo_, other.lo_), std::max(hi_, other.hi_));
}

Interval operator+(const Interval& a, const Interval& b) {
  return from_candidates({a.lo() + b.lo(), a.hi() + b.hi()});
}

Interval operator-(const Interval& a, const Interval& b) {
  return from_candidates({a.lo() - b.hi(), a.hi() - b.lo()});
}

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b) {
  return from_candidates({mul(a.lo(), b.lo()), mul(a.lo(), b.hi()),
                          mul(a.hi(), b.lo()), mul(a.hi(), b.hi())});
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) return entire();
  return a * Interval(1.0 / b.hi(), 1.0 / b.lo());
}

Interval pow(const Interval& base, const Interval& exponent) {
  if (exponent.width() == 0.0 && std::isfinite(exponent.lo()) &&
      std::trunc(exponent.lo()) == exponent.lo() &&
      std::abs(exponent.lo()) < 1e9) {
    return integer_power(base, static_cast<long>(exponent.lo()));
  }
  if (base.lo() > 0.0) {
    Interval log_base(std::log(base.lo()), std::log(base.hi()));
    return exp(exponent * log_base);
  }
  return entire();
}

Interval exp(const Interval& a) {
  return Interval(std::exp(a.lo()), std::exp(a.hi()));
}

Interval sqrt(const Interval& a) {
  if (a.hi() < 0.0) return entire();
  return Interval(std::sqrt(std::max(0.0, a.lo())), std::sqrt(a.hi()));
}

Interval sin(const Interval& a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(a.lo()) || !std::isfinite(a.hi()) ||
      a.width() >= two_pi) {
    return Interval(-1.0, 1.0);
  }
  double lo = std::min(std::sin(a.lo()), std::sin(a.hi()));
  double hi = std::max(std::sin(a.lo()), std::sin(a.hi()));
  // Extrema at pi/2 + 2*pi*k (max) and -pi/2 + 2*pi*k (min).
  auto hits = [&](double phase) {
    double k = std::ceil((a.lo() - phase) / two_pi);
    return phase + k * two_pi <= a.hi();
  };
  if (hits(0.5 * std::numbers::pi)) hi = 1.0;
  if (hits(-0.5 * std::numbers::pi)) lo = -1.0;
  return Interval(lo, hi);
}

Interval cos(const Interval& a) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  return sin(a + Interval::point(half_pi));
}

Box::Box(std::vector<Interval> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("box must have at least one coordinate");
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != coords_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!coords_[i].contains(x[i])) return false;
  }
  return true;
}

Box Box::remove_coord(std::size_t j) const {
  if (j >= coords_.size()) throw DimensionError("remove_coord: index out of range");
  std::vector<Interval> rest;
  rest.reserve(coords_.size() - 1);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i != j) rest.push_back(coords_[i]);
  }
  return Box(std::move(rest));
}

Point Box::clamp(std::span<const double> x) const {
  Point out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out[i] = std::clamp(x[i], coords_[i].lo(), coords_[i].hi());
  }
  return out;
}

double Box::distance(std::span<const double> x) const {
  double sq = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    double d = 0.0;
    if (x[i] < coords_[i].lo()) d = coords_[i].lo() - x[i];
    if (x[i] > coords_[i].hi()) d = x[i] - coords_[i].hi();
    sq += d * d;
  }
  return std::sqrt(sq);
}

Disk::Disk(Point center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw std::invalid_argument("disk radius must be positive and finite");
  }
}

double Disk::distance_to_center(std::span<const double> x) const {
  return distance(x, center_);
}

double Disk::farthest_corner_distance(const Box& box) const {
  if (box.dim() != dim()) throw DimensionError("disk/box dimension mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double d = std::max(std::abs(box[i].lo() - center_[i]),
                        std::abs(box[i].hi() - center_[i]));
    sq += d * d;
  }
  return std::sqrt(sq);
}

bool Disk::contains(const Box& box) const {
  return farthest_corner_distance(box) <= radius_;
}

bool Disk::contains_in_interior(const Box& box) const {
  return farthest_corner_distance(box) < radius_;
}

double norm(std::span<const double> v) {
  double sq = 0.0;
  for (double c : v) sq += c * c;
  return std::sqrt(sq);
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("distance: dimension mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace manapprox
