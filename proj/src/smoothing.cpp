#include "manapprox/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "manapprox/bump.hpp"
#include "manapprox/disk_mesh.hpp"
#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

// Each reflected coordinate maps a range I to 2I - I; the taper adds 0.
std::vector<Interval> extension_ranges(const std::vector<Interval>& ranges, std::size_t n) {
  std::vector<Interval> out;
  out.reserve(ranges.size());
  for (Interval r : ranges) {
    for (std::size_t i = 0; i < n; ++i) r = Interval(2.0 * r.lo() - r.hi(), 2.0 * r.hi() - r.lo());
    out.push_back(r.hull(Interval::point(0.0)));
  }
  return out;
}

Box bounding_box(const Disk& disk) {
  std::vector<Interval> coords;
  for (double c : disk.center()) coords.emplace_back(c - disk.radius(), c + disk.radius());
  return Box(std::move(coords));
}

struct Stencil {
  std::vector<double> offsets;  // n per tap
  std::vector<double> weights;
};

Stencil make_stencil(std::size_t n, double delta, int taps) {
  Stencil st;
  const double h = delta / taps;
  std::vector<int> idx(n, -taps);
  double total = 0.0;
  while (true) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = idx[i] * h;
      r2 += s * s;
    }
    double t = 1.0 - r2 / (delta * delta);
    if (t > 0.0) {
      double w = t * t * t * t;
      for (std::size_t i = 0; i < n; ++i) st.offsets.push_back(idx[i] * h);
      st.weights.push_back(w);
      total += w;
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == taps + 1) idx[d++] = -taps;
    if (d == n) break;
  }
  for (double& w : st.weights) w /= total;
  return st;
}

}  // namespace

double taper(const Box& ix, const Disk& disk, std::span<const double> x) {
  double to_boundary = disk.radius() - disk.distance_to_center(x);
  if (to_boundary <= 0.0) return 0.0;
  double to_box = ix.distance(x);
  if (to_box == 0.0) return 1.0;
  return 1.0 - smooth_step(to_box / (to_box + to_boundary));
}

DiskFunction extend_to_disk(const ContinuousFunction& f, const Box& ix, const Disk& disk) {
  if (ix.dim() != f.n() || disk.dim() != f.n()) {
    throw DimensionError("extend_to_disk: dimension mismatch");
  }
  if (f.n() > 3) throw DimensionError("extend_to_disk supports n <= 3");
  if (!disk.contains_in_interior(ix)) {
    throw HypothesisViolation("box must lie in the interior of the disk");
  }
  auto eval = [f, ix, disk](std::span<const double> x, std::span<double> y) {
    if (ix.contains(x)) {
      f.eval(x, y);
      return;
    }
    std::fill(y.begin(), y.end(), 0.0);
    double w = taper(ix, disk, x);
    if (w == 0.0) return;
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    // Per outside coordinate: the face point c and the mirror image r
    // (clamped to the box), combined as 2 f(.., c, ..) - f(.., r, ..).
    double face[3];
    double mirror[3];
    std::size_t outside[3];
    std::size_t q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      face[i] = std::clamp(x[i], ix[i].lo(), ix[i].hi());
      mirror[i] = std::clamp(2.0 * face[i] - x[i], ix[i].lo(), ix[i].hi());
      if (face[i] != x[i]) outside[q++] = i;
    }
    double z[3];
    double v[16];
    std::vector<double> heap;
    std::span<double> value(v, m);
    if (m > 16) {
      heap.resize(m);
      value = heap;
    }
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
      std::copy(face, face + n, z);
      double coeff = 1.0;
      for (std::size_t b = 0; b < q; ++b) {
        if (mask & (1u << b)) {
          z[outside[b]] = mirror[outside[b]];
          coeff *= -1.0;
        } else {
          coeff *= 2.0;
        }
      }
      f.eval(std::span<const double>(z, n), value);
      for (std::size_t c = 0; c < m; ++c) y[c] += coeff * value[c];
    }
    for (double& c : y) c *= w;
  };
  ContinuousFunction ext(bounding_box(disk), f.m(), eval, extension_ranges(f.ranges(), f.n()));
  return {ix, disk, std::move(ext)};
}

DiskFunction mollify(const DiskFunction& fext, double delta, int taps) {
  if (!(delta > 0.0)) throw std::invalid_argument("mollifier width must be positive");
  if (taps < 1) throw std::invalid_argument("mollifier needs at least one tap");
  const std::size_t n = fext.fn.n();
  auto stencil = std::make_shared<const Stencil>(make_stencil(n, delta, taps));
  const double gap = fext.disk.radius() - fext.disk.farthest_corner_distance(fext.ix);
  const double ramp = std::min(delta, 0.5 * gap);

  auto eval = [stencil, base = fext.fn, disk = fext.disk, n, ramp](
                  std::span<const double> x, std::span<double> y) {
    double to_boundary = disk.radius() - disk.distance_to_center(x);
    std::fill(y.begin(), y.end(), 0.0);
    if (to_boundary <= 0.0) return;
    const std::size_t m = y.size();
    double p[3];
    double v[16];
    std::vector<double> heap;
    std::span<double> value(v, m);
    if (m > 16) {
      heap.resize(m);
      value = heap;
    }
    const std::size_t count = stencil->weights.size();
    for (std::size_t t = 0; t < count; ++t) {
      for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + stencil->offsets[t * n + i];
      base.eval(std::span<const double>(p, n), value);
      const double w = stencil->weights[t];
      for (std::size_t c = 0; c < m; ++c) y[c] += w * value[c];
    }
    double factor = std::min(1.0, to_boundary / ramp);
    if (factor < 1.0) {
      for (double& c : y) c *= factor;
    }
  };
  ContinuousFunction out(fext.fn.domain(), fext.fn.m(), eval, fext.fn.ranges());
  return {fext.ix, fext.disk, std::move(out)};
}

SmoothingSchedule::SmoothingSchedule(double delta0, int r0) : delta0_(delta0), r0_(r0) {
  if (!(delta0_ > 0.0)) throw std::invalid_argument("schedule delta0 must be positive");
  if (r0_ < 1) throw std::invalid_argument("schedule r0 must be >= 1");
}

double SmoothingSchedule::delta(int k) const { return std::ldexp(delta0_, -k); }

int SmoothingSchedule::resolution(int k) const {
  if (k < 0 || k > 20) throw std::out_of_range("schedule index out of range");
  return r0_ << k;
}

ContinuousFunction smoothed_function(const ContinuousFunction& f, const Box& ix,
                                     const Disk& disk, double delta, int taps) {
  return mollify(extend_to_disk(f, ix, disk), delta, taps).fn;
}

ApproximationSequence make_sequence(const ContinuousFunction& f, const Box& ix,
                                    const Disk& disk, const SmoothingSchedule& sched,
                                    int taps) {
  // Validates dimensions and strict containment up front.
  DiskFunction ext = extend_to_disk(f, ix, disk);
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  if (n > 3) throw DimensionError("make_sequence supports n in {1, 2, 3}");
  const double reach = norm(disk.center()) + disk.radius();
  const double bound = std::hypot(reach, ext.fn.sup_bound());

  auto generator = [ext, sched, taps, n, m](int k) {
    DiskMesh mesh = build_disk_mesh(static_cast<int>(n), ext.disk, sched.resolution(k));
    DiskFunction smooth = mollify(ext, sched.delta(k), taps);
    const auto& manifold = *mesh.manifold;
    std::vector<bool> on_boundary = manifold.boundary_vertex_mask();
    const std::size_t count = manifold.vertex_count();
    std::vector<double> values(count * (n + m), 0.0);
    for (std::size_t v = 0; v < count; ++v) {
      auto p = mesh.embedding.value(static_cast<VertexId>(v));
      double* out = values.data() + v * (n + m);
      std::copy(p.begin(), p.end(), out);
      if (!on_boundary[v]) smooth.fn.eval(p, std::span<double>(out + n, m));
    }
    return SequenceItem{PLMap(mesh.manifold, n + m, std::move(values))};
  };
  return ApproximationSequence(n, m, disk, bound, generator);
}

StepDemo make_step_sequence(double steepness0, int r0) {
  if (!(steepness0 > 0.0)) throw std::invalid_argument("steepness must be positive");
  if (r0 < 1) throw std::invalid_argument("r0 must be >= 1");
  const Disk disk({0.0}, 1.5);
  const Box ix({Interval(-1.0, 1.0)});
  auto generator = [disk, ix, steepness0, r0](int k) {
    if (k > 20) throw std::out_of_range("step sequence index out of range");
    DiskMesh mesh = build_disk_mesh(1, disk, r0 << k);
    const double steepness = std::ldexp(steepness0, k);
    const auto& manifold = *mesh.manifold;
    std::vector<bool> on_boundary = manifold.boundary_vertex_mask();
    std::vector<double> values(2 * manifold.vertex_count(), 0.0);
    for (std::size_t v = 0; v < manifold.vertex_count(); ++v) {
      double x = mesh.embedding.value(static_cast<VertexId>(v))[0];
      values[2 * v] = x;
      if (on_boundary[v]) continue;
      double w = std::abs(x) <= 1.0 ? 1.0 : std::max(0.0, (1.5 - std::abs(x)) / 0.5);
      values[2 * v + 1] = std::tanh(steepness * x) * w;
    }
    return SequenceItem{PLMap(mesh.manifold, 2, std::move(values))};
  };
  ApproximationSequence seq(1, 1, disk, std::hypot(1.5, 1.0), generator);
  return {std::move(seq), StepOracle(ix[0]), ix};
}

}  // namespace manapprox
