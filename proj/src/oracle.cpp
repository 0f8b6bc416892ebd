#include "manapprox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

void require_dims(const SetValuedOracle& o, std::span<const double> x,
                  std::span<const double> y) {
  if (x.size() != o.n() || y.size() != o.m()) {
    throw DimensionError("oracle query has the wrong dimensions");
  }
}

std::size_t grid_points_per_dim(std::size_t n) {
  if (n == 1) return 33;
  if (n == 2) return 9;
  return 5;
}

}  // namespace

FunctionGraphOracle::FunctionGraphOracle(ContinuousFunction f) : f_(std::move(f)) {}

bool FunctionGraphOracle::contains(std::span<const double> x,
                                   std::span<const double> y, double tol) const {
  require_dims(*this, x, y);
  if (!f_.domain().contains(x)) return false;
  Point fx = f_(x);
  for (std::size_t c = 0; c < fx.size(); ++c) {
    if (!(std::abs(fx[c] - y[c]) <= tol)) return false;
  }
  return true;
}

double FunctionGraphOracle::graph_distance(std::span<const double> x,
                                           std::span<const double> y) const {
  require_dims(*this, x, y);
  const Box& box = f_.domain();
  const std::size_t n = f_.n();
  Point fz(f_.m());
  auto sq = [&](const Point& z) {
    f_.eval(z, fz);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (z[i] - x[i]) * (z[i] - x[i]);
    for (std::size_t c = 0; c < fz.size(); ++c) s += (fz[c] - y[c]) * (fz[c] - y[c]);
    return s;
  };

  Point best_z = box.clamp(x);
  double best = sq(best_z);
  if (best == 0.0) return 0.0;
  const double radius = std::sqrt(best);

  // The nearest graph point has its x-part within `radius` of x.
  const std::size_t g = grid_points_per_dim(n);
  std::vector<double> lo(n), step(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::max(box[i].lo(), x[i] - radius);
    double hi = std::min(box[i].hi(), x[i] + radius);
    if (hi < lo[i]) hi = lo[i];
    step[i] = (hi - lo[i]) / static_cast<double>(g - 1);
  }
  std::vector<std::size_t> idx(n, 0);
  Point z(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) z[i] = lo[i] + step[i] * static_cast<double>(idx[i]);
    double s = sq(z);
    if (s < best) {
      best = s;
      best_z = z;
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == g) idx[d++] = 0;
    if (d == n) break;
  }

  double h = *std::max_element(step.begin(), step.end());
  const double floor = 1e-14 * (1.0 + radius);
  for (int iter = 0; iter < 20000 && h > floor; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (double dir : {1.0, -1.0}) {
        Point trial = best_z;
        trial[i] = std::clamp(trial[i] + dir * h, box[i].lo(), box[i].hi());
        double s = sq(trial);
        if (s < best) {
          best = s;
          best_z = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return std::sqrt(best);
}

std::optional<Interval> FunctionGraphOracle::component_bound(std::size_t i) const {
  if (i >= f_.m()) throw DimensionError("component index out of range");
  return f_.ranges()[i];
}

std::vector<Point> FunctionGraphOracle::sample_values(std::span<const double> x) const {
  if (!f_.domain().contains(x)) return {};
  return {f_(x)};
}

StepOracle::StepOracle(Interval domain) : domain_(domain) {
  if (!domain_.contains_in_interior(0.0)) {
    throw std::invalid_argument("step oracle domain must contain 0 in its interior");
  }
}

bool StepOracle::contains(std::span<const double> x, std::span<const double> y,
                          double tol) const {
  require_dims(*this, x, y);
  if (!domain_.contains(x[0])) return false;
  if (x[0] < 0.0) return std::abs(y[0] + 1.0) <= tol;
  if (x[0] > 0.0) return std::abs(y[0] - 1.0) <= tol;
  return y[0] >= -1.0 - tol && y[0] <= 1.0 + tol;
}

double StepOracle::graph_distance(std::span<const double> x,
                                  std::span<const double> y) const {
  require_dims(*this, x, y);
  const double px = x[0];
  const double py = y[0];
  double vertical = std::hypot(px, std::max(0.0, std::abs(py) - 1.0));
  double left = std::hypot(px - std::clamp(px, domain_.lo(), 0.0), py + 1.0);
  double right = std::hypot(px - std::clamp(px, 0.0, domain_.hi()), py - 1.0);
  return std::min({vertical, left, right});
}

std::optional<Interval> StepOracle::component_bound(std::size_t i) const {
  if (i != 0) throw DimensionError("component index out of range");
  return Interval(-1.0, 1.0);
}

std::vector<Point> StepOracle::sample_values(std::span<const double> x) const {
  if (!domain_.contains(x[0])) return {};
  if (x[0] < 0.0) return {{-1.0}};
  if (x[0] > 0.0) return {{1.0}};
  return {{-1.0}, {0.0}, {1.0}};
}

BisectionCurveOracle::BisectionCurveOracle(Interval domain, Interval bracket,
                                           Residual residual, double tol,
                                           std::size_t samples)
    : domain_(domain), bracket_(bracket), residual_(std::move(residual)), tol_(tol) {
  if (samples < 3) throw std::invalid_argument("curve oracle needs >= 3 samples");
  xs_.resize(samples);
  ys_.resize(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    double t = static_cast<double>(s) / static_cast<double>(samples - 1);
    xs_[s] = domain_.lo() + t * domain_.width();
    ys_[s] = curve(xs_[s]);
  }
}

double BisectionCurveOracle::curve(double x) const {
  double lo = bracket_.lo();
  double hi = bracket_.hi();
  double r_lo = residual_(x, lo);
  double r_hi = residual_(x, hi);
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  if ((r_lo < 0.0) == (r_hi < 0.0)) {
    throw std::domain_error("curve residual does not change sign on the bracket");
  }
  while (hi - lo > tol_) {
    double mid = 0.5 * (lo + hi);
    double r_mid = residual_(x, mid);
    if (r_mid == 0.0) return mid;
    if ((r_mid < 0.0) == (r_lo < 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool BisectionCurveOracle::contains(std::span<const double> x,
                                    std::span<const double> y, double tol) const {
  require_dims(*this, x, y);
  return domain_.contains(x[0]) && std::abs(y[0] - curve(x[0])) <= tol;
}

double BisectionCurveOracle::graph_distance(std::span<const double> x,
                                            std::span<const double> y) const {
  require_dims(*this, x, y);
  const double px = x[0];
  const double py = y[0];
  auto sq = [&](double s, double ys) { return (s - px) * (s - px) + (ys - py) * (ys - py); };

  std::size_t best_i = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < xs_.size(); ++s) {
    double d = sq(xs_[s], ys_[s]);
    if (d < best) {
      best = d;
      best_i = s;
    }
  }
  // Golden-section refinement between the neighbouring samples.
  double a = xs_[best_i == 0 ? 0 : best_i - 1];
  double b = xs_[std::min(best_i + 1, xs_.size() - 1)];
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sq(c, curve(c));
  double fd = sq(d, curve(d));
  for (int iter = 0; iter < 200 && b - a > 1e-13; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sq(c, curve(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sq(d, curve(d));
    }
  }
  best = std::min({best, fc, fd});
  return std::sqrt(best);
}

std::optional<Interval> BisectionCurveOracle::component_bound(std::size_t i) const {
  if (i != 0) throw DimensionError("component index out of range");
  return bracket_;
}

std::vector<Point> BisectionCurveOracle::sample_values(std::span<const double> x) const {
  if (!domain_.contains(x[0])) return {};
  return {{curve(x[0])}};
}

std::optional<Interval> WholeSpaceOracle::component_bound(std::size_t i) const {
  if (i >= m_) throw DimensionError("component index out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Interval(-inf, inf);
}

std::vector<Point> WholeSpaceOracle::sample_values(std::span<const double>) const {
  return {Point(m_, 0.0)};
}

double graph_semidistance(std::span<const GraphPoint> cloud,
                          const SetValuedOracle& oracle) {
  double worst = 0.0;
  for (const auto& p : cloud) {
    if (p.x.size() != oracle.n() || p.y.size() != oracle.m()) {
      throw DimensionError("cloud point dimensions do not match the oracle");
    }
    worst = std::max(worst, oracle.graph_distance(p.x, p.y));
  }
  return worst;
}

}  // namespace manapprox
