#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "manapprox/geometry.hpp"
#include "manapprox/joint_slice.hpp"
#include "manapprox/oracle.hpp"
#include "manapprox/pl_map.hpp"

namespace manapprox {

struct BoundednessResult {
  double bound = 0.0;
  bool pass = false;
  std::vector<double> per_k;
};

/// Largest vertex-value norm over items 0..max_k; passes iff it does not
/// exceed the sequence's declared bound.
BoundednessResult check_boundedness(const ApproximationSequence& seq, int max_k);

/// Max of oracle.graph_distance over vertices whose x-part lies in `box`.
struct CloudDistance {
  double distance = 0.0;
  std::size_t in_box = 0;
};
CloudDistance in_box_semidistance(const PLMap& g, std::size_t n,
                                  const SetValuedOracle& oracle, const Box& box);

struct ContainmentRow {
  int k;
  double distance;
  std::size_t in_box;
};

struct ContainmentResult {
  std::vector<ContainmentRow> rows;
  double tolerance = 0.0;
  double slack = 1.05;
  bool within_tolerance = false;
  bool monotone = false;

  bool pass() const { return within_tolerance && monotone; }
};

using ToleranceSchedule = std::function<double(int k)>;

/// d_k = in-box semidistance of item k. Passes iff d_K <= tol(K) and
/// d_{k+1} <= slack · d_k for every k (with an absolute floor of 1e-12).
ContainmentResult check_accumulation_containment(const ApproximationSequence& seq,
                                                 const SetValuedOracle& oracle, const Box& box,
                                                 int max_k, const ToleranceSchedule& tol,
                                                 double slack = 1.05);

/// Nonincreasing-within-slack test shared by the containment checks.
bool nonincreasing_within(const std::vector<double>& values, double slack);

struct BoundarySphereResult {
  bool closed = false;
  bool connected = false;
  bool topology = false;
  bool location = false;
  bool injective = false;
  double max_location_error = 0.0;

  bool pass() const { return closed && connected && topology && location && injective; }
};

/// PL surrogate of "g restricted to the boundary is a diffeomorphism onto
/// ∂disk × {0}": the boundary complex is closed and connected with the Euler
/// characteristic of S^(n-1) (n = 1: two points; n = 2: one cycle, V = E;
/// n = 3: χ = 2), its vertex images lie on ∂disk × {0} within `tol`, and the
/// boundary vertex map is injective.
BoundarySphereResult check_boundary_sphere(const SimplicialManifold& m, const PLMap& g,
                                           const Disk& disk, double tol = 1e-9);

/// F_i(x) ⊆ tix over the box: the oracle's component bound lies in tix and
/// every sampled value on a grid of `grid` points per axis has y_i ∈ tix.
/// Vacuous (true) when F is empty.
bool check_hypothesis_eq1(const SetValuedOracle& oracle, std::size_t i, const Interval& tix,
                          const Box& box, int grid = 17);

/// Structural audit of one slice. Counts are numbers of violating items.
struct SliceAudit {
  std::size_t straddle_violations = 0;
  std::size_t dimension_violations = 0;
  std::size_t boundary_identity_mismatches = 0;
  std::size_t containment_chain_violations = 0;
  bool epsilon_in_range = false;
  double margin = 0.0;
  bool margin_ok = false;
  std::size_t crossings = 0;
  std::size_t boundary_crossings = 0;
  /// Largest | |x - c| - R | over boundary N-vertices before pinning.
  double boundary_radial_deviation = 0.0;
  /// Largest |x_j - (theta(0) - eps)| over boundary N-vertices.
  double boundary_level_deviation = 0.0;

  std::size_t violations() const {
    return straddle_violations + dimension_violations + boundary_identity_mismatches +
           containment_chain_violations + (epsilon_in_range ? 0 : 1) + (margin_ok ? 0 : 1);
  }
};

SliceAudit audit_slice(const SliceResult& slice, const SliceConfig& cfg, std::size_t n,
                       const Box& ix, const std::optional<Disk>& disk);

/// Per-k metrics and flags for one sequence.
struct ReportRow {
  int k = 0;
  std::size_t vertex_count = 0;
  std::size_t simplex_count = 0;
  double max_norm = 0.0;
  double semidistance = 0.0;
  std::size_t in_box = 0;
  bool boundary_ok = true;
  double boundary_error = 0.0;
  std::optional<double> epsilon;
  std::optional<std::size_t> crossings;
};

struct VerifyOptions {
  int max_k = 4;
  double containment_tol = 1e-2;
  double slack = 1.05;
  double boundary_tol = 1e-9;
  bool check_boundary = true;
};

struct VerificationReport {
  std::vector<ReportRow> rows;
  VerifyOptions options;
  double declared_bound = 0.0;
  bool bounded = false;
  bool containment_within_tol = false;
  bool containment_monotone = false;
  bool boundary_spheres = false;
  /// Structural slice invariants (true when not a slice run).
  bool slice_invariants = true;
  std::size_t slice_violations = 0;
  bool epsilon_trend = true;

  bool pass() const {
    return bounded && containment_within_tol && containment_monotone && boundary_spheres &&
           slice_invariants && epsilon_trend;
  }
};

/// Generates items 0..max_k once each and fills a report.
VerificationReport verify_sequence(const ApproximationSequence& seq,
                                   const SetValuedOracle& oracle, const Box& box,
                                   const VerifyOptions& options);

/// Same for a JOINT run: also audits each slice and the epsilon trend.
VerificationReport verify_joint(const JointSlicer& slicer, const SetValuedOracle& oracle,
                                const Box& ix, const VerifyOptions& options);

}  // namespace manapprox
