#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "manapprox/function.hpp"
#include "manapprox/geometry.hpp"

namespace manapprox {

/// Black-box description of a set-valued map F: R^n -> subsets of R^m.
///
/// graph_distance is the Euclidean distance in R^(n+m) from (x, y) to the
/// graph {(x', y') : y' ∈ F(x')}, or a computable upper bound on it that
/// vanishes exactly on the graph.
class SetValuedOracle {
 public:
  virtual ~SetValuedOracle() = default;

  virtual std::size_t n() const = 0;
  virtual std::size_t m() const = 0;
  /// y lies within tol of F(x) (sup-norm in y, x held fixed).
  virtual bool contains(std::span<const double> x, std::span<const double> y,
                        double tol) const = 0;
  virtual double graph_distance(std::span<const double> x,
                                std::span<const double> y) const = 0;
  /// Enclosure of the i-th projection of F over its domain; nullopt when F
  /// is empty everywhere.
  virtual std::optional<Interval> component_bound(std::size_t i) const = 0;
  /// Representative points of F(x); empty iff F(x) is empty.
  virtual std::vector<Point> sample_values(std::span<const double> x) const = 0;
};

/// F(x) = {f(x)} on f's domain, empty elsewhere.
class FunctionGraphOracle final : public SetValuedOracle {
 public:
  explicit FunctionGraphOracle(ContinuousFunction f);

  std::size_t n() const override { return f_.n(); }
  std::size_t m() const override { return f_.m(); }
  bool contains(std::span<const double> x, std::span<const double> y,
                double tol) const override;
  /// Local minimization of |(x,y) - (z, f(z))| over z in the ball of radius
  /// |(x,y) - (clamp(x), f(clamp(x)))| around x, seeded by a small grid and
  /// refined by compass search. Never exceeds the seed distance.
  double graph_distance(std::span<const double> x,
                        std::span<const double> y) const override;
  std::optional<Interval> component_bound(std::size_t i) const override;
  std::vector<Point> sample_values(std::span<const double> x) const override;

  const ContinuousFunction& function() const { return f_; }

 private:
  ContinuousFunction f_;
};

/// Filled sign step on `domain` (which must contain 0 in its interior):
/// F(x) = {-1} for x < 0, {+1} for x > 0, [-1, 1] at x = 0.
class StepOracle final : public SetValuedOracle {
 public:
  explicit StepOracle(Interval domain = Interval(-1.0, 1.0));

  std::size_t n() const override { return 1; }
  std::size_t m() const override { return 1; }
  bool contains(std::span<const double> x, std::span<const double> y,
                double tol) const override;
  double graph_distance(std::span<const double> x,
                        std::span<const double> y) const override;
  std::optional<Interval> component_bound(std::size_t i) const override;
  std::vector<Point> sample_values(std::span<const double> x) const override;

 private:
  Interval domain_;
};

/// Graph of a curve y(x), x in `domain`, where y(x) is the unique root in
/// `bracket` of residual(x, y), found by bisection.
class BisectionCurveOracle final : public SetValuedOracle {
 public:
  using Residual = std::function<double(double x, double y)>;

  BisectionCurveOracle(Interval domain, Interval bracket, Residual residual,
                       double tol = 1e-10, std::size_t samples = 1025);

  double curve(double x) const;

  std::size_t n() const override { return 1; }
  std::size_t m() const override { return 1; }
  bool contains(std::span<const double> x, std::span<const double> y,
                double tol) const override;
  double graph_distance(std::span<const double> x,
                        std::span<const double> y) const override;
  std::optional<Interval> component_bound(std::size_t i) const override;
  std::vector<Point> sample_values(std::span<const double> x) const override;

 private:
  Interval domain_;
  Interval bracket_;
  Residual residual_;
  double tol_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// F(x) = R^m everywhere; every point lies on the graph.
class WholeSpaceOracle final : public SetValuedOracle {
 public:
  WholeSpaceOracle(std::size_t n, std::size_t m) : n_(n), m_(m) {}

  std::size_t n() const override { return n_; }
  std::size_t m() const override { return m_; }
  bool contains(std::span<const double>, std::span<const double>,
                double) const override {
    return true;
  }
  double graph_distance(std::span<const double>,
                        std::span<const double>) const override {
    return 0.0;
  }
  std::optional<Interval> component_bound(std::size_t i) const override;
  std::vector<Point> sample_values(std::span<const double> x) const override;

 private:
  std::size_t n_;
  std::size_t m_;
};

struct GraphPoint {
  Point x;
  Point y;
};

/// max over the cloud of oracle.graph_distance; 0 for an empty cloud.
double graph_semidistance(std::span<const GraphPoint> cloud,
                          const SetValuedOracle& oracle);

}  // namespace manapprox
