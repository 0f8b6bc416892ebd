#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "manapprox/errors.hpp"
#include "manapprox/geometry.hpp"

using namespace manapprox;

TEST_CASE("interval construction") {
  Interval a(-1.0, 2.0);
  CHECK(a.width() == 3.0);
  CHECK(a.mid() == 0.5);
  CHECK_THROWS(Interval(1.0, 0.0));
  CHECK_THROWS(Interval(std::nan(""), 0.0));
  CHECK(Interval(0.0, 0.5).inside_interior_of(Interval(-1.0, 1.0)));
  CHECK_FALSE(Interval(0.0, 0.5).inside_interior_of(Interval(0.0, 1.0)));
  CHECK(Interval(0.0, 0.5).subset_of(Interval(0.0, 0.5)));
}

TEST_CASE("interval arithmetic encloses sampled values") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Interval a(-1.5, 0.7);
  Interval b(0.3, 2.0);
  for (int t = 0; t < 2000; ++t) {
    double x = a.lo() + u(rng) * a.width();
    double y = b.lo() + u(rng) * b.width();
    CHECK((a + b).contains(x + y));
    CHECK((a - b).contains(x - y));
    CHECK((a * b).contains(x * y));
    CHECK((a / b).contains(x / y));
    CHECK(sin(a).contains(std::sin(x)));
    CHECK(cos(b).contains(std::cos(y)));
    CHECK(exp(a).contains(std::exp(x)));
    CHECK(sqrt(b).contains(std::sqrt(y)));
    CHECK(pow(a, Interval::point(2.0)).contains(x * x));
    CHECK(pow(b, Interval(0.5, 1.5)).contains(std::pow(y, 1.25)) );
  }
}

TEST_CASE("even power of a symmetric interval starts at zero") {
  Interval sq = pow(Interval(-1.0, 1.0), Interval::point(2.0));
  CHECK(sq.lo() == 0.0);
  CHECK(sq.hi() == 1.0);
}

TEST_CASE("division by an interval containing zero is unbounded") {
  Interval q = Interval(1.0, 2.0) / Interval(-1.0, 1.0);
  CHECK(std::isinf(q.lo()));
  CHECK(std::isinf(q.hi()));
}

TEST_CASE("box operations") {
  Box b({Interval(-1.0, 1.0), Interval(0.0, 2.0), Interval(3.0, 4.0)});
  CHECK(b.dim() == 3);
  Box r = b.remove_coord(1);
  CHECK(r.dim() == 2);
  CHECK(r[1] == Interval(3.0, 4.0));
  double p[] = {2.0, 1.0, 3.5};
  CHECK_FALSE(b.contains(p));
  CHECK(b.distance(p) == doctest::Approx(1.0));
  Point c = b.clamp(p);
  CHECK(c[0] == 1.0);
  CHECK_THROWS(Box({}));
}

TEST_CASE("disk containment uses the farthest corner") {
  Disk d({0.0, 0.0}, 2.0);
  Box inside({Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
  Box touching({Interval(-std::sqrt(2.0), std::sqrt(2.0)), Interval(-std::sqrt(2.0), std::sqrt(2.0))});
  CHECK(d.farthest_corner_distance(inside) == doctest::Approx(std::sqrt(2.0)));
  CHECK(d.contains_in_interior(inside));
  CHECK_FALSE(d.contains_in_interior(Box({Interval(-2.0, 0.0), Interval(0.0, 0.0)})));
  CHECK(d.contains(Box({Interval(-2.0, 0.0), Interval(0.0, 0.0)})));
  CHECK_THROWS(Disk({0.0}, 0.0));
  (void)touching;
}
