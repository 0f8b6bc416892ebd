#include "manapprox/joint_slice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "manapprox/errors.hpp"
#include "manapprox/verify.hpp"

namespace manapprox {

namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<EdgeKey>(a) << 32) | b;
}

VertexId key_lo(EdgeKey k) { return static_cast<VertexId>(k >> 32); }
VertexId key_hi(EdgeKey k) { return static_cast<VertexId>(k & 0xffffffffu); }

VertexId lookup(const std::vector<EdgeKey>& keys, EdgeKey k) {
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  return static_cast<VertexId>(it - keys.begin());
}

}  // namespace

SliceConfig SliceConfig::make(std::size_t i, std::size_t j, const Interval& ix_j,
                              const Interval& tix, std::optional<double> delta_margin) {
  TransitionFunction tf(ix_j, tix);
  double margin = delta_margin.value_or(1e-9 * tf.alpha());
  if (!(margin > 0.0)) throw std::invalid_argument("delta_margin must be positive");
  return SliceConfig{i, j, tf, margin};
}

double h_eval(const TransitionFunction& tf, std::size_t i, std::size_t j, std::size_t n,
              std::span<const double> point) {
  if (j >= n || n + i >= point.size()) throw DimensionError("h_eval: index out of range");
  return tf(point[n + i]) - point[j];
}

double select_regular_value(std::span<const double> h_values, double alpha, int k,
                            double delta_margin, int max_shift_exponent) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(delta_margin > 0.0)) throw std::invalid_argument("delta_margin must be positive");
  std::vector<double> sorted(h_values.begin(), h_values.end());
  std::sort(sorted.begin(), sorted.end());

  auto admissible = [&](double eps) {
    if (!(std::abs(eps) < alpha)) return false;
    auto it = std::lower_bound(sorted.begin(), sorted.end(), eps);
    if (it != sorted.end() && *it - eps < delta_margin) return false;
    if (it != sorted.begin() && eps - *std::prev(it) < delta_margin) return false;
    return true;
  };

  const double candidate = std::ldexp(alpha, -(k + 1));
  if (admissible(candidate)) return candidate;
  for (int p = 1; p <= max_shift_exponent; ++p) {
    for (double sign : {1.0, -1.0}) {
      double eps = candidate + sign * std::ldexp(delta_margin, p);
      if (admissible(eps)) return eps;
    }
  }
  throw SelectionFailure("no regular value within the perturbation search at k = " +
                         std::to_string(k));
}

LevelSet extract_level_set(const SimplicialManifold& m, const PLMap& g,
                           std::span<const double> h_values, double eps) {
  if (m.dim() < 1) throw DimensionError("level sets need a manifold of dimension >= 1");
  if (g.carrier().vertex_count() != m.vertex_count() || h_values.size() != m.vertex_count()) {
    throw DimensionError("level set inputs disagree on the vertex count");
  }
  for (VertexId v : m.used_vertices()) {
    if (h_values[v] == eps) {
      throw RegularityViolation("level " + std::to_string(eps) +
                                " coincides with the value at vertex " + std::to_string(v));
    }
  }
  auto below = [&](VertexId v) { return h_values[v] < eps; };

  const std::size_t arity = m.arity();
  std::vector<EdgeKey> keys;
  for (std::size_t s = 0; s < m.simplex_count(); ++s) {
    auto sx = m.simplex(s);
    for (std::size_t a = 0; a < arity; ++a) {
      for (std::size_t b = a + 1; b < arity; ++b) {
        if (below(sx[a]) != below(sx[b])) keys.push_back(edge_key(sx[a], sx[b]));
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<VertexId> out;
  for (std::size_t s = 0; s < m.simplex_count(); ++s) {
    auto sx = m.simplex(s);
    std::array<VertexId, 4> lo{}, hi{};
    std::size_t nlo = 0;
    std::size_t nhi = 0;
    for (VertexId v : sx) {
      if (below(v)) {
        lo[nlo++] = v;
      } else {
        hi[nhi++] = v;
      }
    }
    if (nlo == 0 || nhi == 0) continue;
    if (nlo == 2 && nhi == 2) {
      std::array<VertexId, 4> quad{
          lookup(keys, edge_key(lo[0], hi[0])), lookup(keys, edge_key(lo[0], hi[1])),
          lookup(keys, edge_key(lo[1], hi[1])), lookup(keys, edge_key(lo[1], hi[0]))};
      std::rotate(quad.begin(), std::min_element(quad.begin(), quad.end()), quad.end());
      out.insert(out.end(), {quad[0], quad[1], quad[2], quad[0], quad[2], quad[3]});
      continue;
    }
    for (std::size_t a = 0; a < nlo; ++a) {
      for (std::size_t b = 0; b < nhi; ++b) out.push_back(lookup(keys, edge_key(lo[a], hi[b])));
    }
  }

  const std::size_t target = g.target_dim();
  std::vector<double> values(keys.size() * target);
  std::vector<ParentEdge> parents;
  parents.reserve(keys.size());
  std::vector<bool> on_boundary(keys.size(), false);
  std::vector<VertexId> boundary_edges = m.boundary_edges();
  for (std::size_t e = 0; e < keys.size(); ++e) {
    VertexId a = key_lo(keys[e]);
    VertexId b = key_hi(keys[e]);
    double t = (eps - h_values[a]) / (h_values[b] - h_values[a]);
    parents.push_back({a, b, t});
    auto va = g.value(a);
    auto vb = g.value(b);
    for (std::size_t c = 0; c < target; ++c) {
      values[e * target + c] = (1.0 - t) * va[c] + t * vb[c];
    }
  }
  // Boundary edges of M are sorted pairs; binary search per crossing edge.
  std::vector<EdgeKey> boundary_keys;
  boundary_keys.reserve(boundary_edges.size() / 2);
  for (std::size_t q = 0; q + 1 < boundary_edges.size(); q += 2) {
    boundary_keys.push_back(edge_key(boundary_edges[q], boundary_edges[q + 1]));
  }
  std::sort(boundary_keys.begin(), boundary_keys.end());
  for (std::size_t e = 0; e < keys.size(); ++e) {
    on_boundary[e] = std::binary_search(boundary_keys.begin(), boundary_keys.end(), keys[e]);
  }

  auto n_manifold = std::make_shared<const SimplicialManifold>(m.dim() - 1, keys.size(),
                                                               std::move(out));
  PLMap lifted(n_manifold, target, std::move(values));
  return LevelSet{n_manifold, std::move(lifted), eps, std::move(parents), std::move(on_boundary)};
}

PLMap project_drop_j(const PLMap& source, std::size_t j) {
  const std::size_t target = source.target_dim();
  if (j >= target) throw DimensionError("project_drop_j: index out of range");
  const std::size_t count = source.carrier().vertex_count();
  std::vector<double> values;
  values.reserve(count * (target - 1));
  for (std::size_t v = 0; v < count; ++v) {
    auto val = source.value(static_cast<VertexId>(v));
    for (std::size_t c = 0; c < target; ++c) {
      if (c != j) values.push_back(val[c]);
    }
  }
  return PLMap(source.carrier_ptr(), target - 1, std::move(values));
}

CoupledOracle::CoupledOracle(std::shared_ptr<const SetValuedOracle> f, std::size_t i,
                             std::size_t j, Interval ix_j)
    : f_(std::move(f)), i_(i), j_(j), ix_j_(ix_j) {
  if (!f_) throw std::invalid_argument("coupled oracle needs a base oracle");
  if (i_ >= f_->m() || j_ >= f_->n()) throw DimensionError("coupled oracle index out of range");
}

Point CoupledOracle::lift(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != n() || y.size() != m()) throw DimensionError("coupled oracle query dimensions");
  Point full;
  full.reserve(x.size() + 1);
  full.insert(full.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(j_));
  full.push_back(y[i_]);
  full.insert(full.end(), x.begin() + static_cast<std::ptrdiff_t>(j_), x.end());
  return full;
}

bool CoupledOracle::contains(std::span<const double> x, std::span<const double> y,
                             double tol) const {
  return f_->contains(lift(x, y), y, tol);
}

double CoupledOracle::graph_distance(std::span<const double> x,
                                     std::span<const double> y) const {
  return f_->graph_distance(lift(x, y), y);
}

std::optional<Interval> CoupledOracle::component_bound(std::size_t i) const {
  return f_->component_bound(i);
}

std::vector<Point> CoupledOracle::sample_values(std::span<const double> x) const {
  if (x.size() != n()) throw DimensionError("coupled oracle query dimensions");
  constexpr int kScan = 257;
  auto full_at = [&](double xj) {
    Point full(x.begin(), x.end());
    full.insert(full.begin() + static_cast<std::ptrdiff_t>(j_), xj);
    return full;
  };
  auto residual = [&](double xj, double& r) {
    auto s = f_->sample_values(full_at(xj));
    if (s.size() != 1) return false;
    r = s[0][i_] - xj;
    return true;
  };

  std::vector<Point> found;
  double prev_x = 0.0;
  double prev_r = 0.0;
  bool prev_ok = false;
  for (int s = 0; s < kScan; ++s) {
    double xj = ix_j_.lo() + ix_j_.width() * s / (kScan - 1);
    for (const auto& y : f_->sample_values(full_at(xj))) {
      if (std::abs(y[i_] - xj) <= 1e-12) found.push_back(y);
    }
    double r = 0.0;
    bool ok = residual(xj, r);
    if (ok && prev_ok && ((prev_r < 0.0) != (r < 0.0)) && prev_r != 0.0 && r != 0.0) {
      double a = prev_x;
      double b = xj;
      double ra = prev_r;
      for (int it = 0; it < 80 && b - a > 0.0; ++it) {
        double mid = 0.5 * (a + b);
        double rm = 0.0;
        if (!residual(mid, rm)) break;
        if ((rm < 0.0) == (ra < 0.0)) {
          a = mid;
          ra = rm;
        } else {
          b = mid;
        }
      }
      auto s_mid = f_->sample_values(full_at(0.5 * (a + b)));
      if (s_mid.size() == 1) found.push_back(s_mid[0]);
    }
    prev_x = xj;
    prev_r = r;
    prev_ok = ok;
  }
  return found;
}

JointSlicer::JointSlicer(ApproximationSequence base, SliceConfig cfg,
                         std::optional<Disk> slice_disk)
    : base_(std::move(base)), cfg_(std::move(cfg)), slice_disk_(std::move(slice_disk)) {}

SliceResult JointSlicer::slice(int k) const {
  SequenceItem it = base_.item(k);
  const std::size_t n = base_.n();
  const auto& m = it.manifold();
  std::vector<double> h(m.vertex_count());
  for (std::size_t v = 0; v < h.size(); ++v) {
    h[v] = h_eval(cfg_.tf, cfg_.i, cfg_.j, n, it.map.value(static_cast<VertexId>(v)));
  }
  std::vector<double> used;
  for (VertexId v : m.used_vertices()) used.push_back(h[v]);
  double eps = select_regular_value(used, cfg_.tf.alpha(), k, cfg_.delta_margin,
                                    cfg_.max_shift_exponent);
  LevelSet level = extract_level_set(m, it.map, h, eps);
  PLMap projected = project_drop_j(level.lifted, cfg_.j);

  if (slice_disk_) {
    // Pin boundary vertices radially onto the fixed slice disk boundary.
    std::vector<double> values = projected.values();
    const std::size_t target = projected.target_dim();
    const std::size_t nx = n - 1;
    const Point& c = slice_disk_->center();
    for (std::size_t v = 0; v < level.on_boundary_edge.size(); ++v) {
      if (!level.on_boundary_edge[v]) continue;
      double* val = values.data() + v * target;
      double r = distance(std::span<const double>(val, nx), c);
      if (r > 0.0) {
        double scale = slice_disk_->radius() / r;
        for (std::size_t q = 0; q < nx; ++q) val[q] = c[q] + (val[q] - c[q]) * scale;
      }
      std::fill(val + nx, val + target, 0.0);
    }
    projected = PLMap(projected.carrier_ptr(), target, std::move(values));
  }
  return SliceResult{std::move(level), std::move(projected), eps, it.map.carrier_ptr(),
                     std::move(h)};
}

JointResult joint(const ApproximationSequence& seq, const SliceConfig& cfg,
                  std::shared_ptr<const SetValuedOracle> oracle_f, const Box& ix,
                  int hypothesis_grid) {
  const std::size_t n = seq.n();
  const std::size_t m = seq.m();
  if (n < 1 || m < 1) throw HypothesisViolation("JOINT needs n >= 1 and m >= 1");
  if (cfg.i >= m || cfg.j >= n) throw DimensionError("slice indices out of range");
  if (ix.dim() != n) throw DimensionError("box dimension does not match the sequence");
  if (!oracle_f || oracle_f->n() != n || oracle_f->m() != m) {
    throw DimensionError("oracle dimensions do not match the sequence");
  }
  if (!(cfg.tf.outer() == ix[cfg.j])) {
    throw HypothesisViolation("transition function must be built on ix_j");
  }
  if (!check_hypothesis_eq1(*oracle_f, cfg.i, cfg.tf.inner(), ix, hypothesis_grid)) {
    throw HypothesisViolation("component " + std::to_string(cfg.i + 1) +
                              " of F is not contained in the inner interval over the box");
  }

  std::optional<Disk> slice_disk;
  double bound = seq.declared_bound();
  if (n >= 2) {
    const Disk& disk = *seq.disk();
    double offset = cfg.tf(0.0) - disk.center()[cfg.j];
    double r2 = disk.radius() * disk.radius() - offset * offset;
    if (!(r2 > 0.0)) throw HypothesisViolation("slice hyperplane misses the disk");
    Point center = disk.center();
    center.erase(center.begin() + static_cast<std::ptrdiff_t>(cfg.j));
    slice_disk.emplace(std::move(center), std::sqrt(r2));
    if (!slice_disk->contains_in_interior(ix.remove_coord(cfg.j))) {
      throw HypothesisViolation("slice disk does not contain the reduced box");
    }
    bound = std::max(bound, norm(slice_disk->center()) + slice_disk->radius());
  }

  auto slicer = std::make_shared<const JointSlicer>(seq, cfg, slice_disk);
  ApproximationSequence g_seq(n - 1, m, slice_disk, bound, [slicer](int k) {
    return SequenceItem{slicer->slice(k).gprime};
  });
  auto g_oracle = std::make_shared<const CoupledOracle>(std::move(oracle_f), cfg.i, cfg.j,
                                                        ix[cfg.j]);
  return JointResult{slicer, std::move(g_seq), std::move(g_oracle)};
}

}  // namespace manapprox
