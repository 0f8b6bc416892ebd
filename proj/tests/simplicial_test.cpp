#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "manapprox/disk_mesh.hpp"
#include "manapprox/errors.hpp"
#include "manapprox/pl_map.hpp"
#include "manapprox/simplicial.hpp"

using namespace manapprox;

namespace {

// Face incidence counted from scratch.
std::map<std::vector<VertexId>, int> facet_counts(const SimplicialManifold& m) {
  std::map<std::vector<VertexId>, int> counts;
  for (std::size_t s = 0; s < m.simplex_count(); ++s) {
    auto sx = m.simplex(s);
    for (std::size_t drop = 0; drop < sx.size(); ++drop) {
      std::vector<VertexId> f;
      for (std::size_t i = 0; i < sx.size(); ++i) {
        if (i != drop) f.push_back(sx[i]);
      }
      std::sort(f.begin(), f.end());
      ++counts[f];
    }
  }
  return counts;
}

// V - E + F of a closed triangle complex, computed directly from triangles.
long triangle_euler(const SimplicialManifold& b) {
  std::set<VertexId> v;
  std::set<std::pair<VertexId, VertexId>> e;
  for (std::size_t s = 0; s < b.simplex_count(); ++s) {
    auto t = b.simplex(s);
    for (int i = 0; i < 3; ++i) {
      v.insert(t[i]);
      VertexId a = t[i];
      VertexId c = t[(i + 1) % 3];
      e.insert({std::min(a, c), std::max(a, c)});
    }
  }
  return static_cast<long>(v.size()) - static_cast<long>(e.size()) +
         static_cast<long>(b.simplex_count());
}

}  // namespace

TEST_CASE("construction rejects malformed complexes") {
  CHECK_THROWS_AS(SimplicialManifold(1, 2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialManifold(1, 2, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialManifold(1, 2, {0, 1, 1, 0}), std::invalid_argument);
  // Three edges sharing vertex 0: not a pseudo-manifold.
  CHECK_THROWS_AS(SimplicialManifold(1, 4, {0, 1, 0, 2, 0, 3}), std::invalid_argument);
  CHECK_THROWS(SimplicialManifold(4, 5, {0, 1, 2, 3, 4}));
}

TEST_CASE("1-disk mesh is a polyline with two boundary points") {
  DiskMesh mesh = build_disk_mesh(1, Disk({0.0}, 1.5), 4);
  CHECK(mesh.manifold->vertex_count() == 5);
  SimplicialManifold b = mesh.manifold->boundary();
  std::vector<VertexId> bv = b.used_vertices();
  REQUIRE(bv.size() == 2);
  std::vector<double> xs{mesh.embedding.value(bv[0])[0], mesh.embedding.value(bv[1])[0]};
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == -1.5);
  CHECK(xs[1] == 1.5);
  CHECK(b.boundary().empty());
}

TEST_CASE("2-disk mesh boundary is one cycle") {
  for (int r : {1, 2, 3, 4, 7, 16}) {
    CAPTURE(r);
    Disk disk({0.3, -0.2}, 1.7);
    DiskMesh mesh = build_disk_mesh(2, disk, r);
    SimplicialManifold b = mesh.manifold->boundary();
    CHECK(b.simplex_count() == b.used_vertices().size());
    CHECK(b.component_count() == 1);
    CHECK(b.is_closed());
    for (VertexId v : b.used_vertices()) {
      CHECK(std::abs(disk.distance_to_center(mesh.embedding.value(v)) - disk.radius()) <= 1e-12);
    }
    for (const auto& [f, c] : facet_counts(*mesh.manifold)) CHECK((c == 1 || c == 2));
  }
}

TEST_CASE("boundary of a 12-vertex ring is a 12-edge cycle") {
  // Resolution 4 gives two rings; the outer ring has 12 vertices.
  DiskMesh mesh = build_disk_mesh(2, Disk({0.0, 0.0}, 1.0), 4);
  SimplicialManifold b = mesh.manifold->boundary();
  CHECK(b.used_vertices().size() == 12);
  CHECK(b.simplex_count() == 12);
  std::map<VertexId, int> degree;
  for (std::size_t s = 0; s < b.simplex_count(); ++s) {
    for (VertexId v : b.simplex(s)) ++degree[v];
  }
  for (const auto& [v, d] : degree) CHECK(d == 2);
  CHECK(b.component_count() == 1);
}

TEST_CASE("3-disk boundary has the Euler characteristic of the 2-sphere") {
  for (int r : {1, 2, 4}) {
    CAPTURE(r);
    Disk disk({0.0, 0.0, 0.0}, 1.0);
    DiskMesh mesh = build_disk_mesh(3, disk, r);
    SimplicialManifold b = mesh.manifold->boundary();
    CHECK(triangle_euler(b) == 2);
    CHECK(b.euler_characteristic() == 2);
    CHECK(b.component_count() == 1);
    CHECK(b.boundary().empty());
    for (const auto& [f, c] : facet_counts(*mesh.manifold)) CHECK((c == 1 || c == 2));
    for (VertexId v : b.used_vertices()) {
      CHECK(std::abs(disk.distance_to_center(mesh.embedding.value(v)) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("unsupported mesh dimension") {
  CHECK_THROWS_AS(build_disk_mesh(4, Disk({0.0, 0.0, 0.0, 0.0}, 1.0), 2), DimensionError);
  CHECK_THROWS_AS(build_disk_mesh(0, Disk({0.0}, 1.0), 2), DimensionError);
}

TEST_CASE("dimension 0 complexes have no boundary") {
  SimplicialManifold pts(0, 3, {0, 2});
  CHECK(pts.boundary().empty());
  CHECK(pts.boundary_facet_count() == 0);
}

TEST_CASE("PL evaluation") {
  auto tri = std::make_shared<const SimplicialManifold>(2, 3, std::vector<VertexId>{0, 1, 2});
  PLMap g(tri, 2, {0.0, 0.0, 3.0, 0.0, 0.0, 3.0});
  Point c = g.evaluate(ManifoldPoint(0, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(1.0));
  Point v = g.evaluate(ManifoldPoint(0, {0.0, 1.0, 0.0}));
  CHECK(v == Point{3.0, 0.0});
  CHECK_THROWS_AS(g.evaluate(ManifoldPoint(1, {1.0, 0.0, 0.0})), std::out_of_range);
  CHECK_THROWS(ManifoldPoint(0, {0.5, 0.6, -0.1}));
  CHECK_THROWS(ManifoldPoint(0, {0.5, 0.6, 0.0}));

  auto edge = std::make_shared<const SimplicialManifold>(1, 2, std::vector<VertexId>{0, 1});
  PLMap e(edge, 2, {0.0, 0.0, 2.0, 4.0});
  CHECK(e.evaluate(ManifoldPoint(0, {0.5, 0.5})) == Point{1.0, 2.0});
}

TEST_CASE("PL evaluation is linear in barycentric coordinates") {
  auto tet = std::make_shared<const SimplicialManifold>(3, 4, std::vector<VertexId>{0, 1, 2, 3});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> vals(12);
  for (double& x : vals) x = u(rng);
  PLMap g(tet, 3, vals);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  auto random_bary = [&] {
    std::vector<double> b(4);
    double s = 0.0;
    for (double& x : b) s += (x = w(rng) + 1e-3);
    for (double& x : b) x /= s;
    return b;
  };
  for (int t = 0; t < 200; ++t) {
    auto a = random_bary();
    auto b = random_bary();
    double lam = w(rng);
    std::vector<double> c(4);
    for (int i = 0; i < 4; ++i) c[i] = lam * a[i] + (1 - lam) * b[i];
    Point ga = g.evaluate(ManifoldPoint(0, a));
    Point gb = g.evaluate(ManifoldPoint(0, b));
    Point gc = g.evaluate(ManifoldPoint(0, c));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(gc[i] - (lam * ga[i] + (1 - lam) * gb[i])) <= 1e-12);
  }
}

TEST_CASE("sequence items are reproducible and dimension checked") {
  Disk disk({0.0, 0.0}, 1.0);
  ApproximationSequence seq(2, 1, disk, 2.0, [disk](int k) {
    DiskMesh mesh = build_disk_mesh(2, disk, 2 + k);
    std::vector<double> vals;
    for (std::size_t v = 0; v < mesh.manifold->vertex_count(); ++v) {
      auto p = mesh.embedding.value(static_cast<VertexId>(v));
      vals.insert(vals.end(), {p[0], p[1], p[0] * p[1]});
    }
    return SequenceItem{PLMap(mesh.manifold, 3, vals)};
  });
  CHECK(seq.item(3).map.values() == seq.item(3).map.values());
  CHECK_THROWS(seq.item(-1));
  ApproximationSequence bad(2, 2, disk, 2.0, [&seq](int k) { return seq.item(k); });
  CHECK_THROWS_AS(bad.item(0), DimensionError);
}
