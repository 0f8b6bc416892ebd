#include "manapprox/bump.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

double complement(double t) { return 1.0 - smooth_step(t); }

// Table of Λ(u) = ∫₀^u (1 - λ) on a uniform grid of [0, 1], integrated cell by
// cell with adaptive Gauss-Kronrod, evaluated by monotone cubic Hermite
// interpolation using the exact derivative 1 - λ.
class ComplementTable {
 public:
  static constexpr std::size_t kCells = 4096;

  ComplementTable() : values_(kCells + 1), slopes_(kCells + 1) {
    using boost::math::quadrature::gauss_kronrod;
    values_[0] = 0.0;
    for (std::size_t c = 0; c < kCells; ++c) {
      double a = static_cast<double>(c) / kCells;
      double b = static_cast<double>(c + 1) / kCells;
      double err = 0.0;
      double piece = gauss_kronrod<double, 15>::integrate(complement, a, b, 3, 1e-12, &err);
      values_[c + 1] = values_[c] + piece;
    }
    for (std::size_t c = 0; c <= kCells; ++c) {
      slopes_[c] = complement(static_cast<double>(c) / kCells);
    }
    // Fritsch-Carlson limiter keeps the interpolant monotone.
    const double h = 1.0 / kCells;
    for (std::size_t c = 0; c < kCells; ++c) {
      double secant = (values_[c + 1] - values_[c]) / h;
      if (secant <= 0.0) {
        slopes_[c] = slopes_[c + 1] = 0.0;
        continue;
      }
      double a = slopes_[c] / secant;
      double b = slopes_[c + 1] / secant;
      double r = a * a + b * b;
      if (r > 9.0) {
        double tau = 3.0 / std::sqrt(r);
        slopes_[c] = tau * a * secant;
        slopes_[c + 1] = tau * b * secant;
      }
    }
  }

  double mass() const { return values_.back(); }

  double operator()(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return mass();
    const double h = 1.0 / kCells;
    std::size_t c = std::min(static_cast<std::size_t>(u * kCells), kCells - 1);
    double s = (u - static_cast<double>(c) * h) / h;
    double s2 = s * s;
    double s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1;
    double h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2;
    double h11 = s3 - s2;
    double v = h00 * values_[c] + h10 * h * slopes_[c] + h01 * values_[c + 1] +
               h11 * h * slopes_[c + 1];
    return std::clamp(v, values_[c], values_[c + 1]);
  }

 private:
  std::vector<double> values_;
  std::vector<double> slopes_;
};

const ComplementTable& table() {
  static const ComplementTable t;
  return t;
}

}  // namespace

double smooth_step(double t) {
  if (!(t > 0.0)) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double smooth_step_complement_mass() { return table().mass(); }

double smooth_step_complement_integral(double u) { return table()(u); }

double make_alpha(const Interval& outer, const Interval& inner) {
  if (!inner.inside_interior_of(outer)) {
    throw HypothesisViolation("inner interval must lie in the interior of the outer interval");
  }
  return 0.5 * std::min(std::abs(outer.lo() - inner.lo()), std::abs(outer.hi() - inner.hi()));
}

TransitionFunction::TransitionFunction(Interval outer, Interval inner)
    : outer_(outer), inner_(inner), alpha_(make_alpha(outer, inner)) {
  band_hi_ = outer_.hi() - alpha_;
  while (band_hi_ + alpha_ > outer_.hi()) {
    band_hi_ = std::nextafter(band_hi_, -std::numeric_limits<double>::infinity());
  }
  band_lo_ = outer_.lo() + alpha_;
  while (band_lo_ - alpha_ < outer_.lo()) {
    band_lo_ = std::nextafter(band_lo_, std::numeric_limits<double>::infinity());
  }
  const double mass = smooth_step_complement_mass();
  width_hi_ = (band_hi_ - inner_.hi()) / mass;
  width_lo_ = (inner_.lo() - band_lo_) / mass;
}

double TransitionFunction::operator()(double y) const {
  if (inner_.contains(y)) return y;
  if (y > inner_.hi()) {
    double rise = width_hi_ * smooth_step_complement_integral((y - inner_.hi()) / width_hi_);
    return std::min(inner_.hi() + rise, band_hi_);
  }
  if (y < inner_.lo()) {
    double drop = width_lo_ * smooth_step_complement_integral((inner_.lo() - y) / width_lo_);
    return std::max(inner_.lo() - drop, band_lo_);
  }
  // NaN input.
  return y;
}

}  // namespace manapprox
