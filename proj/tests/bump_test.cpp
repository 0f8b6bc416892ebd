#include <doctest.h>

#include <cmath>
#include <random>

#include "manapprox/bump.hpp"
#include "manapprox/errors.hpp"

using namespace manapprox;

TEST_CASE("smooth step values") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == 0.5);
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    double t = i / 1000.0;
    double v = smooth_step(t);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v >= prev);
    // Away from the ends the increase is representable in double.
    if (t > 0.05 && t < 0.95) CHECK(v > prev);
    prev = v;
  }
  // Direct formula at an interior point.
  double t = 0.3;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  CHECK(smooth_step(t) == doctest::Approx(a / (a + b)).epsilon(1e-15));
}

TEST_CASE("complement mass is one half by symmetry") {
  CHECK(std::abs(smooth_step_complement_mass() - 0.5) <= 1e-12);
  // Midpoint rule on a fine grid as an independent estimate of a partial integral.
  const int cells = 200000;
  double u = 0.37;
  double sum = 0.0;
  for (int c = 0; c < cells; ++c) {
    double t = (c + 0.5) * u / cells;
    sum += 1.0 - smooth_step(t);
  }
  sum *= u / cells;
  CHECK(std::abs(smooth_step_complement_integral(u) - sum) <= 1e-10);
}

TEST_CASE("alpha formula") {
  CHECK(make_alpha(Interval(-1.0, 1.0), Interval(0.0, 0.5)) == 0.25);
  CHECK(make_alpha(Interval(0.0, 4.0), Interval(1.0, 3.0)) == 0.5);
  CHECK_THROWS_AS(make_alpha(Interval(0.0, 1.0), Interval(0.0, 0.5)), HypothesisViolation);
}

TEST_CASE("transition function examples") {
  TransitionFunction tf(Interval(-1.0, 1.0), Interval(0.0, 0.5));
  CHECK(tf(0.25) == 0.25);
  double hi = tf(100.0);
  CHECK(hi > 0.5);
  CHECK(hi <= 0.75);
  double lo = tf(-100.0);
  CHECK(lo >= -0.75);
  CHECK(lo < 0.0);
  CHECK(tf(0.0) == 0.0);
}

TEST_CASE("transition function properties on samples") {
  std::mt19937 rng(42);
  for (auto [outer, inner] : {std::pair{Interval(-1.0, 1.0), Interval(0.0, 0.5)},
                              std::pair{Interval(0.0, 4.0), Interval(1.0, 3.0)},
                              std::pair{Interval(-3.0, 0.1), Interval(-0.2, 0.05)}}) {
    TransitionFunction tf(outer, inner);
    const double alpha = tf.alpha();
    std::uniform_real_distribution<double> in(inner.lo(), inner.hi());
    std::uniform_real_distribution<double> wide(-10.0, 10.0);
    std::uniform_real_distribution<double> eps(-alpha, alpha);
    for (int t = 0; t < 10000; ++t) {
      double y = in(rng);
      CHECK(std::abs(tf(y) - y) <= 1e-12);
    }
    for (int t = 0; t < 10000; ++t) {
      double y = wide(rng);
      double e = t % 100 == 0 ? (t % 200 == 0 ? alpha : -alpha) : eps(rng);
      CHECK(outer.contains(tf(y) + e));
    }
    for (int t = 0; t < 10000; ++t) {
      double a = wide(rng);
      double b = wide(rng);
      if (a > b) std::swap(a, b);
      CHECK(tf(a) <= tf(b));
    }
  }
}
