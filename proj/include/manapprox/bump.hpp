#pragma once

#include <vector>

#include "manapprox/geometry.hpp"

namespace manapprox {

/// Smooth step: 0 for t <= 0, 1 for t >= 1, and
/// e^(-1/t) / (e^(-1/t) + e^(-1/(1-t))) in between.
double smooth_step(double t);

/// Margin ½·min{|outer.lo - inner.lo|, |outer.hi - inner.hi|}. Throws
/// HypothesisViolation unless inner ⊆ interior(outer).
double make_alpha(const Interval& outer, const Interval& inner);

/// Monotone map R -> outer that is the identity on `inner` and saturates
/// inside [outer.lo + alpha, outer.hi - alpha].
///
/// Above inner.hi the slope is 1 - smooth_step((y - inner.hi) / d_hi), with
/// d_hi chosen so the total rise past inner.hi is (outer.hi - alpha) -
/// inner.hi; symmetric below inner.lo. The antiderivative of 1 - smooth_step
/// is tabulated once at construction.
class TransitionFunction {
 public:
  TransitionFunction(Interval outer, Interval inner);

  const Interval& outer() const { return outer_; }
  const Interval& inner() const { return inner_; }
  double alpha() const { return alpha_; }
  /// Saturation widths below inner.lo and above inner.hi.
  double width_below() const { return width_lo_; }
  double width_above() const { return width_hi_; }
  /// Closed range of theta: every value plus any |eps| <= alpha stays in outer.
  double band_lo() const { return band_lo_; }
  double band_hi() const { return band_hi_; }

  double operator()(double y) const;

 private:
  Interval outer_;
  Interval inner_;
  double alpha_;
  double band_lo_;
  double band_hi_;
  double width_lo_;
  double width_hi_;
};

/// ∫₀¹ (1 - smooth_step(t)) dt, computed numerically once.
double smooth_step_complement_mass();

/// ∫₀^u (1 - smooth_step(t)) dt for u >= 0 (constant for u >= 1).
double smooth_step_complement_integral(double u);

}  // namespace manapprox
