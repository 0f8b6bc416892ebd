#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "manapprox/errors.hpp"
#include "manapprox/expression.hpp"
#include "manapprox/joint_slice.hpp"
#include "manapprox/smoothing.hpp"

using namespace manapprox;

namespace {

const Box kIx2({Interval(-1.0, 1.0), Interval(-1.0, 1.0)});

ContinuousFunction quadratic() {
  return function_from_expressions({Expression::parse("(x1^2 + x2^2) / 4", 2)}, kIx2);
}

}  // namespace

TEST_CASE("h on the diagonal and outside") {
  TransitionFunction tf(Interval(-1.0, 1.0), Interval(0.0, 0.5));
  double diag[] = {0.3, 0.0, 0.3};
  CHECK(h_eval(tf, 0, 0, 2, diag) == 0.0);
  double left[] = {-1.5, 0.0, 0.0};
  CHECK(h_eval(tf, 0, 0, 2, left) == 1.5);
  double right[] = {1.5, 0.0, 0.0};
  CHECK(h_eval(tf, 0, 0, 2, right) == -1.5);
}

TEST_CASE("regular value selection traces") {
  std::vector<double> vals{0.0, 0.1};
  CHECK(select_regular_value(vals, 0.25, 0, 0.01) == 0.125);
  CHECK(select_regular_value({}, 0.25, 3, 0.01) == 0.015625);
  std::vector<double> hit{0.125};
  CHECK(select_regular_value(hit, 0.25, 0, 0.01) == 0.125 + 0.02);
  // Values every 0.05 across (-alpha, alpha) leave no level with margin 0.1.
  std::vector<double> dense;
  for (int i = -10; i <= 10; ++i) dense.push_back(0.05 * i);
  CHECK_THROWS_AS(select_regular_value(dense, 0.25, 0, 0.1), SelectionFailure);
}

TEST_CASE("selected levels respect the margin and stay below alpha") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> vals(50);
    for (double& v : vals) v = u(rng);
    int k = trial % 8;
    double margin = 1e-6;
    double eps = select_regular_value(vals, 0.25, k, margin);
    CHECK(std::abs(eps) < 0.25);
    for (double v : vals) CHECK(std::abs(v - eps) >= margin);
  }
}

TEST_CASE("level set of a triangle") {
  auto tri = std::make_shared<const SimplicialManifold>(2, 3, std::vector<VertexId>{0, 1, 2});
  PLMap g(tri, 2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0});
  std::vector<double> h{-1.0, 1.0, 1.0};
  LevelSet ls = extract_level_set(*tri, g, h, 0.0);
  CHECK(ls.manifold->dim() == 1);
  CHECK(ls.manifold->simplex_count() == 1);
  REQUIRE(ls.parents.size() == 2);
  for (const auto& p : ls.parents) {
    CHECK(p.a == 0);
    CHECK(p.t == 0.5);
  }
  std::vector<double> none{1.0, 2.0, 3.0};
  CHECK(extract_level_set(*tri, g, none, 0.0).manifold->simplex_count() == 0);
  CHECK_THROWS_AS(extract_level_set(*tri, g, none, 2.0), RegularityViolation);
}

TEST_CASE("level set of a tetrahedron is a split quadrilateral") {
  auto tet = std::make_shared<const SimplicialManifold>(3, 4, std::vector<VertexId>{0, 1, 2, 3});
  PLMap g(tet, 3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1});
  std::vector<double> h{-1.0, -1.0, 1.0, 1.0};
  LevelSet ls = extract_level_set(*tet, g, h, 0.0);
  std::set<std::pair<VertexId, VertexId>> expected;
  for (VertexId a = 0; a < 4; ++a) {
    for (VertexId b = a + 1; b < 4; ++b) {
      if ((h[a] < 0.0) != (h[b] < 0.0)) expected.insert({a, b});
    }
  }
  std::set<std::pair<VertexId, VertexId>> got;
  for (const auto& p : ls.parents) {
    got.insert({p.a, p.b});
    CHECK(p.t == 0.5);
  }
  CHECK(got == expected);
  CHECK(ls.manifold->simplex_count() == 2);
  CHECK(ls.manifold->dim() == 2);
  // The two triangles share the diagonal and form a disk with a 4-cycle boundary.
  CHECK(ls.manifold->boundary().simplex_count() == 4);
}

TEST_CASE("projection drops a coordinate") {
  auto pt = std::make_shared<const SimplicialManifold>(0, 2, std::vector<VertexId>{0, 1});
  PLMap g(pt, 3, {3.0, 4.0, 5.0, 0.0, 0.0, 0.0});
  PLMap p = project_drop_j(g, 0);
  CHECK(p.target_dim() == 2);
  CHECK(p.value(0)[0] == 4.0);
  CHECK(p.value(0)[1] == 5.0);
  CHECK(p.value(1)[0] == 0.0);
  CHECK(p.value(1)[1] == 0.0);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<VertexId> ids(1000);
  for (VertexId v = 0; v < 1000; ++v) ids[v] = v;
  auto many = std::make_shared<const SimplicialManifold>(0, 1000, ids);
  std::vector<double> vals(4000);
  for (double& x : vals) x = u(rng);
  PLMap big(many, 4, vals);
  PLMap small = project_drop_j(big, 2);
  for (VertexId v = 0; v < 1000; ++v) CHECK(norm(small.value(v)) <= norm(big.value(v)));
}

TEST_CASE("coupled oracle solves the diagonal equation") {
  auto f = std::make_shared<const FunctionGraphOracle>(quadratic());
  CoupledOracle g(f, 0, 0, Interval(-1.0, 1.0));
  CHECK(g.n() == 1);
  double x0[] = {0.0};
  auto at0 = g.sample_values(x0);
  REQUIRE(at0.size() == 1);
  CHECK(std::abs(at0[0][0]) <= 1e-9);
  double x1[] = {1.0};
  auto at1 = g.sample_values(x1);
  REQUIRE(at1.size() == 1);
  CHECK(std::abs(at1[0][0] - (2.0 - std::sqrt(3.0))) <= 1e-9);
  double y[] = {2.0 - std::sqrt(3.0)};
  CHECK(g.graph_distance(x1, y) <= 1e-6);
  double far[] = {0.4};
  CHECK(g.graph_distance(x1, far) > 0.05);
}

TEST_CASE("joint checks its hypotheses") {
  auto oracle = std::make_shared<const FunctionGraphOracle>(quadratic());
  ApproximationSequence seq = make_sequence(quadratic(), kIx2, Disk({0.0, 0.0}, 2.0),
                                            SmoothingSchedule());
  SliceConfig ok = SliceConfig::make(0, 0, kIx2[0], Interval(0.0, 0.5));
  JointResult r = joint(seq, ok, oracle, kIx2);
  CHECK(r.sequence.n() == 1);
  CHECK(r.sequence.m() == 1);
  REQUIRE(r.slicer->slice_disk().has_value());
  CHECK(r.slicer->slice_disk()->radius() == doctest::Approx(2.0));

  SliceConfig narrow = SliceConfig::make(0, 0, kIx2[0], Interval(0.0, 0.4));
  CHECK_THROWS_AS(joint(seq, narrow, oracle, kIx2), HypothesisViolation);
  CHECK_THROWS_AS(SliceConfig::make(0, 0, kIx2[0], Interval(-1.0, 0.5)), HypothesisViolation);
}

TEST_CASE("slices satisfy the structural invariants") {
  auto oracle = std::make_shared<const FunctionGraphOracle>(quadratic());
  ApproximationSequence seq = make_sequence(quadratic(), kIx2, Disk({0.0, 0.0}, 2.0),
                                            SmoothingSchedule());
  SliceConfig cfg = SliceConfig::make(0, 0, kIx2[0], Interval(0.0, 0.5));
  JointResult r = joint(seq, cfg, oracle, kIx2);
  for (int k = 0; k <= 2; ++k) {
    CAPTURE(k);
    SliceResult s = r.slicer->slice(k);
    CHECK(std::abs(s.epsilon_used) < cfg.tf.alpha());
    const SimplicialManifold& n = *s.level.manifold;
    CHECK(n.dim() == 1);
    for (const auto& p : s.level.parents) {
      double a = s.parent_h_values[p.a] - s.epsilon_used;
      double b = s.parent_h_values[p.b] - s.epsilon_used;
      CHECK(a * b < 0.0);
    }
    // Boundary edges of M from scratch.
    std::set<std::pair<VertexId, VertexId>> bd;
    SimplicialManifold mb = s.parent->boundary();
    for (std::size_t e = 0; e < mb.simplex_count(); ++e) {
      bd.insert({mb.simplex(e)[0], mb.simplex(e)[1]});
    }
    std::set<VertexId> on_edge;
    for (std::size_t v = 0; v < s.level.parents.size(); ++v) {
      const auto& p = s.level.parents[v];
      if (bd.count({p.a, p.b})) on_edge.insert(static_cast<VertexId>(v));
    }
    auto nb = n.boundary().used_vertices();
    CHECK(std::set<VertexId>(nb.begin(), nb.end()) == on_edge);
    CHECK(on_edge.size() == 2);
  }
}

TEST_CASE("one-dimensional slices are nonempty") {
  Box ix({Interval(-1.0, 1.0)});
  ContinuousFunction f = function_from_expressions({Expression::parse("(x1 + 1) / 4", 1)}, ix);
  auto oracle = std::make_shared<const FunctionGraphOracle>(f);
  ApproximationSequence seq = make_sequence(f, ix, Disk({0.0}, 1.5), SmoothingSchedule());
  JointResult r = joint(seq, SliceConfig::make(0, 0, ix[0], Interval(0.0, 0.5)), oracle, ix);
  CHECK_FALSE(r.slicer->slice_disk().has_value());
  for (int k = 0; k <= 6; ++k) {
    SliceResult s = r.slicer->slice(k);
    CHECK(s.level.parents.size() >= 1);
    CHECK(s.level.manifold->dim() == 0);
  }
}
