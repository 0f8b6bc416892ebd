#include "manapprox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <set>
#include <stdexcept>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

CloudDistance cloud_distance(const PLMap& g, std::size_t n, const SetValuedOracle& oracle,
                             const Box* box) {
  if (g.target_dim() != oracle.n() + oracle.m() || oracle.n() != n) {
    throw DimensionError("map and oracle dimensions disagree");
  }
  CloudDistance out;
  for (VertexId v : g.carrier().used_vertices()) {
    auto val = g.value(v);
    auto x = val.first(n);
    if (box && !box->contains(x)) continue;
    ++out.in_box;
    out.distance = std::max(out.distance, oracle.graph_distance(x, val.subspan(n)));
  }
  return out;
}

double max_vertex_norm(const PLMap& g) {
  double worst = 0.0;
  for (VertexId v : g.carrier().used_vertices()) worst = std::max(worst, norm(g.value(v)));
  return worst;
}

bool epsilon_trend_ok(const std::vector<double>& eps, const std::vector<double>& cand,
                      double alpha) {
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(std::abs(eps[k]) < alpha)) return false;
    if (k + 1 < eps.size()) {
      double wiggle = std::abs(eps[k] - cand[k]) + std::abs(eps[k + 1] - cand[k + 1]);
      if (std::abs(eps[k + 1]) > std::abs(eps[k]) + wiggle) return false;
    }
  }
  return true;
}

}  // namespace

bool nonincreasing_within(const std::vector<double>& values, double slack) {
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (values[k + 1] > slack * values[k] + 1e-12) return false;
  }
  return true;
}

BoundednessResult check_boundedness(const ApproximationSequence& seq, int max_k) {
  if (max_k < 0) throw std::invalid_argument("max_k must be >= 0");
  BoundednessResult out;
  for (int k = 0; k <= max_k; ++k) {
    double b = max_vertex_norm(seq.item(k).map);
    out.per_k.push_back(b);
    out.bound = std::max(out.bound, b);
  }
  out.pass = out.bound <= seq.declared_bound();
  return out;
}

CloudDistance in_box_semidistance(const PLMap& g, std::size_t n, const SetValuedOracle& oracle,
                                  const Box& box) {
  return cloud_distance(g, n, oracle, &box);
}

ContainmentResult check_accumulation_containment(const ApproximationSequence& seq,
                                                 const SetValuedOracle& oracle, const Box& box,
                                                 int max_k, const ToleranceSchedule& tol,
                                                 double slack) {
  if (max_k < 0) throw std::invalid_argument("max_k must be >= 0");
  ContainmentResult out;
  out.slack = slack;
  std::vector<double> d;
  for (int k = 0; k <= max_k; ++k) {
    CloudDistance cd = cloud_distance(seq.item(k).map, seq.n(), oracle, &box);
    out.rows.push_back({k, cd.distance, cd.in_box});
    d.push_back(cd.distance);
  }
  out.tolerance = tol(max_k);
  out.within_tolerance = d.back() <= out.tolerance;
  out.monotone = nonincreasing_within(d, slack);
  return out;
}

BoundarySphereResult check_boundary_sphere(const SimplicialManifold& m, const PLMap& g,
                                           const Disk& disk, double tol) {
  BoundarySphereResult out;
  const int n = m.dim();
  if (n < 1) return out;
  if (disk.dim() != static_cast<std::size_t>(n) || g.target_dim() < disk.dim()) {
    throw DimensionError("boundary check: disk and map dimensions disagree");
  }
  if (g.carrier().vertex_count() != m.vertex_count()) {
    throw DimensionError("boundary check: map is not over this manifold");
  }
  SimplicialManifold b = m.boundary();
  std::vector<VertexId> verts = b.used_vertices();
  out.closed = b.dim() == 0 || b.is_closed();
  if (n == 1) {
    out.connected = true;
    out.topology = verts.size() == 2;
  } else {
    out.connected = !verts.empty() && b.component_count() == 1;
    if (n == 2) {
      out.topology = !verts.empty() && b.simplex_count() == verts.size();
    } else {
      out.topology = !verts.empty() && b.euler_characteristic() == 2;
    }
  }

  const std::size_t nx = disk.dim();
  std::vector<std::vector<double>> images;
  images.reserve(verts.size());
  for (VertexId v : verts) {
    auto val = g.value(v);
    double err = std::abs(disk.distance_to_center(val.first(nx)) - disk.radius());
    for (double y : val.subspan(nx)) err = std::max(err, std::abs(y));
    out.max_location_error = std::max(out.max_location_error, err);
    images.emplace_back(val.begin(), val.end());
  }
  out.location = !verts.empty() && out.max_location_error <= tol;
  std::sort(images.begin(), images.end());
  out.injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  return out;
}

bool check_hypothesis_eq1(const SetValuedOracle& oracle, std::size_t i, const Interval& tix,
                          const Box& box, int grid) {
  if (i >= oracle.m()) throw DimensionError("component index out of range");
  if (box.dim() != oracle.n()) throw DimensionError("box dimension does not match the oracle");
  if (grid < 2) throw std::invalid_argument("hypothesis grid needs >= 2 points per axis");
  auto bound = oracle.component_bound(i);
  if (bound && !bound->subset_of(tix)) return false;

  const std::size_t n = box.dim();
  std::vector<int> idx(n, 0);
  Point x(n);
  while (true) {
    for (std::size_t d = 0; d < n; ++d) {
      x[d] = box[d].lo() + box[d].width() * idx[d] / (grid - 1);
    }
    for (const auto& y : oracle.sample_values(x)) {
      if (!tix.contains(y[i])) return false;
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == grid) idx[d++] = 0;
    if (d == n) break;
  }
  return true;
}

SliceAudit audit_slice(const SliceResult& slice, const SliceConfig& cfg, std::size_t n,
                       const Box& ix, const std::optional<Disk>& disk) {
  SliceAudit a;
  const LevelSet& level = slice.level;
  const auto& nm = *level.manifold;
  const double eps = slice.epsilon_used;
  const auto& h = slice.parent_h_values;

  a.crossings = level.parents.size();
  for (const auto& e : level.parents) {
    double da = h[e.a] - eps;
    double db = h[e.b] - eps;
    if (!(da * db < 0.0)) ++a.straddle_violations;
  }
  if (nm.dim() != static_cast<int>(n) - 1) a.dimension_violations = std::max<std::size_t>(1, nm.simplex_count());

  std::set<VertexId> on_edge;
  for (std::size_t v = 0; v < level.on_boundary_edge.size(); ++v) {
    if (level.on_boundary_edge[v]) on_edge.insert(static_cast<VertexId>(v));
  }
  a.boundary_crossings = on_edge.size();
  std::set<VertexId> boundary_n;
  if (nm.dim() >= 1) {
    for (VertexId v : nm.boundary().used_vertices()) boundary_n.insert(v);
  }
  std::vector<VertexId> diff;
  std::set_symmetric_difference(on_edge.begin(), on_edge.end(), boundary_n.begin(),
                                boundary_n.end(), std::back_inserter(diff));
  a.boundary_identity_mismatches = diff.size();

  for (std::size_t v = 0; v < level.parents.size(); ++v) {
    auto x = level.lifted.value(static_cast<VertexId>(v)).first(n);
    bool reduced_in = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (q != cfg.j && !ix[q].contains(x[q])) reduced_in = false;
    }
    if (reduced_in && !ix.contains(x)) ++a.containment_chain_violations;
    if (disk && level.on_boundary_edge[v]) {
      a.boundary_radial_deviation = std::max(
          a.boundary_radial_deviation, std::abs(disk->distance_to_center(x) - disk->radius()));
      a.boundary_level_deviation =
          std::max(a.boundary_level_deviation, std::abs(x[cfg.j] - (cfg.tf(0.0) - eps)));
    }
  }

  a.epsilon_in_range = std::abs(eps) < cfg.tf.alpha();
  a.margin = std::numeric_limits<double>::infinity();
  for (VertexId v : slice.parent->used_vertices()) a.margin = std::min(a.margin, std::abs(h[v] - eps));
  a.margin_ok = a.margin >= cfg.delta_margin;
  return a;
}

VerificationReport verify_sequence(const ApproximationSequence& seq,
                                   const SetValuedOracle& oracle, const Box& box,
                                   const VerifyOptions& options) {
  VerificationReport rep;
  rep.options = options;
  rep.declared_bound = seq.declared_bound();
  std::vector<double> d;
  double worst_norm = 0.0;
  bool spheres = true;
  for (int k = 0; k <= options.max_k; ++k) {
    SequenceItem it = seq.item(k);
    ReportRow row;
    row.k = k;
    row.vertex_count = it.manifold().used_vertices().size();
    row.simplex_count = it.manifold().simplex_count();
    row.max_norm = max_vertex_norm(it.map);
    CloudDistance cd = cloud_distance(it.map, seq.n(), oracle, &box);
    row.semidistance = cd.distance;
    row.in_box = cd.in_box;
    if (options.check_boundary && seq.disk()) {
      auto b = check_boundary_sphere(it.manifold(), it.map, *seq.disk(), options.boundary_tol);
      row.boundary_ok = b.pass();
      row.boundary_error = b.max_location_error;
    }
    spheres = spheres && row.boundary_ok;
    worst_norm = std::max(worst_norm, row.max_norm);
    d.push_back(row.semidistance);
    rep.rows.push_back(row);
  }
  rep.bounded = worst_norm <= seq.declared_bound();
  rep.containment_within_tol = !d.empty() && d.back() <= options.containment_tol;
  rep.containment_monotone = nonincreasing_within(d, options.slack);
  rep.boundary_spheres = spheres;
  return rep;
}

VerificationReport verify_joint(const JointSlicer& slicer, const SetValuedOracle& oracle,
                                const Box& ix, const VerifyOptions& options) {
  const auto& cfg = slicer.config();
  const std::size_t n = slicer.base().n();
  std::optional<Box> reduced;
  if (n >= 2) reduced = ix.remove_coord(cfg.j);

  VerificationReport rep;
  rep.options = options;
  double declared = slicer.base().declared_bound();
  if (slicer.slice_disk()) {
    declared = std::max(declared, norm(slicer.slice_disk()->center()) + slicer.slice_disk()->radius());
  }
  rep.declared_bound = declared;
  std::vector<double> d;
  std::vector<double> eps;
  std::vector<double> cand;
  double worst_norm = 0.0;
  bool spheres = true;
  for (int k = 0; k <= options.max_k; ++k) {
    SliceResult s = slicer.slice(k);
    SliceAudit audit = audit_slice(s, cfg, n, ix, slicer.base().disk());
    ReportRow row;
    row.k = k;
    row.vertex_count = s.level.parents.size();
    row.simplex_count = s.level.manifold->simplex_count();
    row.max_norm = max_vertex_norm(s.gprime);
    CloudDistance cd = cloud_distance(s.gprime, n - 1, oracle, reduced ? &*reduced : nullptr);
    row.semidistance = cd.distance;
    row.in_box = cd.in_box;
    row.epsilon = s.epsilon_used;
    row.crossings = audit.crossings;
    if (n >= 2) {
      if (options.check_boundary) {
        auto b = check_boundary_sphere(*s.level.manifold, s.gprime, *slicer.slice_disk(),
                                       options.boundary_tol);
        row.boundary_ok = b.pass();
        row.boundary_error = b.max_location_error;
      }
    } else {
      // Zero-dimensional slices: the requirement is nonemptiness.
      row.boundary_ok = audit.crossings >= 1;
    }
    spheres = spheres && row.boundary_ok;
    rep.slice_violations += audit.violations();
    worst_norm = std::max(worst_norm, row.max_norm);
    d.push_back(row.semidistance);
    eps.push_back(s.epsilon_used);
    cand.push_back(std::ldexp(cfg.tf.alpha(), -(k + 1)));
    rep.rows.push_back(row);
  }
  rep.bounded = worst_norm <= declared;
  rep.containment_within_tol = !d.empty() && d.back() <= options.containment_tol;
  rep.containment_monotone = nonincreasing_within(d, options.slack);
  rep.boundary_spheres = spheres;
  rep.slice_invariants = rep.slice_violations == 0;
  rep.epsilon_trend = epsilon_trend_ok(eps, cand, cfg.tf.alpha());
  return rep;
}

}  // namespace manapprox
