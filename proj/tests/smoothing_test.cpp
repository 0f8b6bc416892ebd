#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "manapprox/errors.hpp"
#include "manapprox/expression.hpp"
#include "manapprox/smoothing.hpp"

using namespace manapprox;

namespace {

ContinuousFunction expr1(const char* text, double lo = -1.0, double hi = 1.0) {
  return function_from_expressions({Expression::parse(text, 1)}, Box({Interval(lo, hi)}));
}

const Box kIx1({Interval(-1.0, 1.0)});
const Disk kDisk1({0.0}, 1.5);

double at(const ContinuousFunction& f, double x) {
  double in[] = {x};
  double out[1];
  f.eval(in, out);
  return out[0];
}

// Discrete convolution of x^2 at 0 with the (1 - s^2/d^2)^4 kernel sampled at
// spacing d/taps, written out independently of the library.
double brute_force_square_at_zero(double delta, int taps) {
  double num = 0.0;
  double den = 0.0;
  for (int i = -taps; i <= taps; ++i) {
    double s = i * delta / taps;
    double t = 1.0 - s * s / (delta * delta);
    if (t <= 0.0) continue;
    double w = t * t * t * t;
    num += w * s * s;
    den += w;
  }
  return num / den;
}

}  // namespace

TEST_CASE("extension is exact on the box and zero on the sphere") {
  ContinuousFunction f = expr1("sin(3*x1) + x1^2");
  DiskFunction ext = extend_to_disk(f, kIx1, kDisk1);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    double x = u(rng);
    CHECK(at(ext.fn, x) == at(f, x));
  }
  CHECK(at(ext.fn, 1.5) == 0.0);
  CHECK(at(ext.fn, -1.5) == 0.0);
  CHECK(at(ext.fn, 2.0) == 0.0);
}

TEST_CASE("extension of a constant uses the taper") {
  ContinuousFunction one = expr1("1");
  DiskFunction ext = extend_to_disk(one, kIx1, kDisk1);
  CHECK(at(ext.fn, 1.25) == 0.5);
  CHECK(taper(kIx1, kDisk1, std::vector<double>{1.25}) == 0.5);
  CHECK(taper(kIx1, kDisk1, std::vector<double>{0.5}) == 1.0);
  CHECK(taper(kIx1, kDisk1, std::vector<double>{1.5}) == 0.0);
}

TEST_CASE("extension has matching one-sided slopes at the box face") {
  ContinuousFunction f = expr1("x1^2");
  DiskFunction ext = extend_to_disk(f, kIx1, kDisk1);
  const double h = 1e-5;
  double inside = (at(ext.fn, 1.0) - at(ext.fn, 1.0 - h)) / h;
  double outside = (at(ext.fn, 1.0 + h) - at(ext.fn, 1.0)) / h;
  CHECK(std::abs(inside - 2.0) <= 1e-4);
  CHECK(std::abs(outside - 2.0) <= 1e-4);
}

TEST_CASE("extension requires strict containment") {
  ContinuousFunction f = expr1("x1");
  CHECK_THROWS_AS(extend_to_disk(f, kIx1, Disk({0.0}, 1.0)), HypothesisViolation);
}

TEST_CASE("mollifier examples") {
  DiskFunction c = mollify(extend_to_disk(expr1("0.7"), kIx1, kDisk1), 0.1);
  for (double x : {-0.8, 0.0, 0.35, 0.9}) CHECK(std::abs(at(c.fn, x) - 0.7) <= 1e-14);

  DiskFunction lin = mollify(extend_to_disk(expr1("x1"), kIx1, kDisk1), 0.1);
  CHECK(std::abs(at(lin.fn, 0.0)) <= 1e-9);

  for (double delta : {0.1, 0.05, 0.3}) {
    DiskFunction sq = mollify(extend_to_disk(expr1("x1^2"), kIx1, kDisk1), delta);
    double v = at(sq.fn, 0.0);
    CHECK(v > 0.0);
    CHECK(v <= delta * delta);
    CHECK(std::abs(v - brute_force_square_at_zero(delta, 4)) <= 1e-15);
  }
}

TEST_CASE("mollified values vanish on the sphere") {
  DiskFunction sq = mollify(extend_to_disk(expr1("x1^2 + 2"), kIx1, kDisk1), 0.2);
  CHECK(at(sq.fn, 1.5) == 0.0);
  CHECK(at(sq.fn, -1.5) == 0.0);
}

TEST_CASE("schedule") {
  SmoothingSchedule s;
  CHECK(s.delta(0) == 0.4);
  CHECK(s.delta(3) == 0.05);
  CHECK(s.resolution(0) == 8);
  CHECK(s.resolution(4) == 128);
  CHECK_THROWS(SmoothingSchedule(0.0, 8));
  CHECK_THROWS(SmoothingSchedule(0.4, 0));
}

TEST_CASE("zero function gives zero y-parts") {
  Box ix({Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
  Disk disk({0.0, 0.0}, 2.0);
  ContinuousFunction zero =
      function_from_expressions({Expression::parse("0", 2)}, ix);
  ApproximationSequence seq = make_sequence(zero, ix, disk, SmoothingSchedule());
  for (int k = 0; k < 3; ++k) {
    SequenceItem item = seq.item(k);
    for (std::size_t v = 0; v < item.map.carrier().vertex_count(); ++v) {
      CHECK(item.map.value(static_cast<VertexId>(v))[2] == 0.0);
    }
  }
}

TEST_CASE("boundary vertices have zero y-part") {
  Box ix({Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
  Disk disk({0.0, 0.0}, 2.0);
  ContinuousFunction f = function_from_expressions(
      {Expression::parse("sin(pi*x1)*x2 + 3", 2), Expression::parse("x1", 2)}, ix);
  ApproximationSequence seq = make_sequence(f, ix, disk, SmoothingSchedule());
  SequenceItem item = seq.item(2);
  auto mask = item.manifold().boundary_vertex_mask();
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) continue;
    auto val = item.map.value(static_cast<VertexId>(v));
    CHECK(val[2] == 0.0);
    CHECK(val[3] == 0.0);
  }
}

TEST_CASE("square sequence approaches the function on interior vertices") {
  ContinuousFunction f = expr1("x1^2");
  ApproximationSequence seq = make_sequence(f, kIx1, kDisk1, SmoothingSchedule());
  SequenceItem item = seq.item(6);
  double worst = 0.0;
  for (std::size_t v = 0; v < item.map.carrier().vertex_count(); ++v) {
    auto val = item.map.value(static_cast<VertexId>(v));
    if (std::abs(val[0]) < 1.0) worst = std::max(worst, std::abs(val[1] - val[0] * val[0]));
  }
  CHECK(worst <= 1e-2);
  for (double x : item.map.values()) CHECK(std::abs(x) <= seq.declared_bound());
}

TEST_CASE("sup error over the box shrinks with k") {
  Box ix2({Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
  Disk disk2({0.0, 0.0}, 2.0);
  ContinuousFunction f2 = function_from_expressions({Expression::parse("sin(pi*x1)*x2", 2)}, ix2);
  SmoothingSchedule sched;
  double prev = 1e300;
  for (int k = 0; k <= 4; ++k) {
    ContinuousFunction s = smoothed_function(f2, ix2, disk2, sched.delta(k));
    double worst = 0.0;
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= 40; ++b) {
        double x[] = {-1.0 + a / 20.0, -1.0 + b / 20.0};
        double ys[1];
        s.eval(x, ys);
        worst = std::max(worst, std::abs(ys[0] - std::sin(std::numbers::pi * x[0]) * x[1]));
      }
    }
    CAPTURE(k);
    CHECK(worst <= 1.05 * prev);
    prev = worst;
  }
  CHECK(prev <= 1e-2);
}

TEST_CASE("step sequence") {
  StepDemo demo = make_step_sequence();
  for (int k : {0, 3}) {
    SequenceItem item = demo.sequence.item(k);
    for (std::size_t v = 0; v < item.map.carrier().vertex_count(); ++v) {
      auto val = item.map.value(static_cast<VertexId>(v));
      if (std::abs(val[0]) == 1.5 || val[0] == 0.0) CHECK(val[1] == 0.0);
      CHECK(std::hypot(val[0], val[1]) <= std::hypot(1.5, 1.0));
    }
  }
}
