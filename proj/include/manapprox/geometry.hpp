#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace manapprox {

using Point = std::vector<double>;

/// Closed interval [lo, hi]. Construction rejects lo > hi and NaN ends.
class Interval {
 public:
  Interval(double lo, double hi);

  static Interval point(double v) { return Interval(v, v); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return 0.5 * (lo_ + hi_); }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains_in_interior(double v) const { return lo_ < v && v < hi_; }
  bool subset_of(const Interval& other) const {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }
  /// Strict inclusion at both ends: this ⊆ interior(other).
  bool inside_interior_of(const Interval& other) const {
    return other.lo_ < lo_ && hi_ < other.hi_;
  }
  Interval hull(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

// Natural interval extensions, used for range enclosures of expressions.
// No outward rounding.
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval pow(const Interval& base, const Interval& exponent);
Interval exp(const Interval& a);
Interval sqrt(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

/// Axis-aligned box, an ordered list of n >= 1 intervals.
class Box {
 public:
  explicit Box(std::vector<Interval> coords);

  std::size_t dim() const { return coords_.size(); }
  const Interval& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Interval>& coords() const { return coords_; }

  bool contains(std::span<const double> x) const;
  /// Box with coordinate j removed. Requires dim() >= 2.
  Box remove_coord(std::size_t j) const;
  /// Nearest point of the box.
  Point clamp(std::span<const double> x) const;
  /// Euclidean distance to the box (0 inside).
  double distance(std::span<const double> x) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> coords_;
};

/// Closed round disk (ball) in R^n.
class Disk {
 public:
  Disk(Point center, double radius);

  std::size_t dim() const { return center_.size(); }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  double distance_to_center(std::span<const double> x) const;
  /// Largest distance from the centre to a corner of the box.
  double farthest_corner_distance(const Box& box) const;
  bool contains(const Box& box) const;
  /// box ⊆ interior(disk).
  bool contains_in_interior(const Box& box) const;

 private:
  Point center_;
  double radius_;
};

double norm(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace manapprox
