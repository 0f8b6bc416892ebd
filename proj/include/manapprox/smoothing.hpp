#pragma once

#include "manapprox/function.hpp"
#include "manapprox/geometry.hpp"
#include "manapprox/oracle.hpp"
#include "manapprox/pl_map.hpp"

namespace manapprox {

/// A function on the closed disk `disk` that agrees with some f on `ix`.
struct DiskFunction {
  Box ix;
  Disk disk;
  ContinuousFunction fn;
};

/// Taper weight: 1 on ix, 0 on and outside the disk boundary, and
/// 1 - smooth_step(d_ix / (d_ix + d_bd)) in between, where d_bd = R - |x - c|
/// and d_ix is the distance to ix. Flat to all orders at the box.
double taper(const Box& ix, const Disk& disk, std::span<const double> x);

/// Extension x -> taper(x) · (E f)(x) where E reflects across every box face
/// that x lies beyond: 2 f(face point) - f(mirror point), applied per
/// coordinate. E f is C^1 across the faces when f is C^1, so mollification
/// error stays second order up to the box boundary. Exactly f on ix, exactly
/// 0 on the boundary sphere. Requires ix ⊆ interior(disk).
DiskFunction extend_to_disk(const ContinuousFunction& f, const Box& ix, const Disk& disk);

/// Convolution with the normalized radial kernel (1 - |s|²/δ²)⁴ sampled on a
/// stencil of spacing δ/taps, multiplied by a factor that is 1 on ix and
/// falls linearly to 0 at the boundary sphere over width min(δ, gap/2).
DiskFunction mollify(const DiskFunction& fext, double delta, int taps = 4);

/// δ_k = delta0 · 2^-k and r_k = r0 · 2^k.
class SmoothingSchedule {
 public:
  explicit SmoothingSchedule(double delta0 = 0.4, int r0 = 8);

  double delta(int k) const;
  int resolution(int k) const;
  double delta0() const { return delta0_; }
  int r0() const { return r0_; }

 private:
  double delta0_;
  int r0_;
};

/// Sequence with M^(k) the disk mesh at resolution r_k and g^(k) the graph
/// map p -> (p, f̃^(k)(p)), f̃^(k) = mollify(extend_to_disk(f), δ_k).
/// Boundary vertices get an exactly zero y-part.
ApproximationSequence make_sequence(const ContinuousFunction& f, const Box& ix,
                                    const Disk& disk, const SmoothingSchedule& sched,
                                    int taps = 4);

/// f̃^(k) itself, for sup-norm comparisons against f.
ContinuousFunction smoothed_function(const ContinuousFunction& f, const Box& ix,
                                     const Disk& disk, double delta, int taps = 4);

/// Steepening smooth step on the segment [-1.5, 1.5]: y_k(x) =
/// tanh(s_k x) · w(x) with s_k = steepness0 · 2^k and w = 1 on [-1, 1],
/// falling linearly to 0 at ±1.5; mesh resolution r0 · 2^k.
struct StepDemo {
  ApproximationSequence sequence;
  StepOracle oracle;
  Box ix;
};

StepDemo make_step_sequence(double steepness0 = 4.0, int r0 = 8);

}  // namespace manapprox
