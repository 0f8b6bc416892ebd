#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "manapprox/bump.hpp"
#include "manapprox/oracle.hpp"
#include "manapprox/pl_map.hpp"
#include "manapprox/simplicial.hpp"

namespace manapprox {

/// Parameters of the diagonal slice y_i = x_j. Indices are 0-based.
struct SliceConfig {
  std::size_t i;
  std::size_t j;
  TransitionFunction tf;
  double delta_margin;
  /// Largest p tried in the ±2^p · delta_margin perturbation search.
  int max_shift_exponent = 60;

  /// Builds tf from (ix_j, tix); delta_margin defaults to 1e-9 · alpha.
  static SliceConfig make(std::size_t i, std::size_t j, const Interval& ix_j,
                          const Interval& tix, std::optional<double> delta_margin = {});
};

/// h(x, y) = theta(y_i) - x_j for a point (x, y) ∈ R^(n+m).
double h_eval(const TransitionFunction& tf, std::size_t i, std::size_t j, std::size_t n,
              std::span<const double> point);

/// Level alpha · 2^-(k+1), shifted by the smallest ±2^p · delta_margin
/// (p = 1, 2, ..., positive first) needed to keep every vertex value at
/// distance >= delta_margin, subject to |eps| < alpha.
double select_regular_value(std::span<const double> h_values, double alpha, int k,
                            double delta_margin, int max_shift_exponent = 60);

/// M-edge (a < b) carrying an N-vertex at (1 - t) · a + t · b.
struct ParentEdge {
  VertexId a;
  VertexId b;
  double t;
};

/// PL level set {h = eps} of a PL map's composition with h.
struct LevelSet {
  std::shared_ptr<const SimplicialManifold> manifold;
  /// g restricted to the level set, in R^(n+m).
  PLMap lifted;
  double epsilon;
  std::vector<ParentEdge> parents;
  /// Parent edge lies on the boundary of M.
  std::vector<bool> on_boundary_edge;
};

/// Marching simplices: one vertex per sign-changing edge, one (n-1)-simplex
/// per crossed n-simplex; tetrahedra cut in a quadrilateral are split along
/// the diagonal through the quad's lowest N-vertex id. Throws
/// RegularityViolation when eps equals a vertex value.
LevelSet extract_level_set(const SimplicialManifold& m, const PLMap& g,
                           std::span<const double> h_values, double eps);

/// Drops coordinate j of every vertex value.
PLMap project_drop_j(const PLMap& source, std::size_t j);

struct SliceResult {
  LevelSet level;
  /// (x_{≠j}, y) per N-vertex; boundary vertices pinned onto the slice disk.
  PLMap gprime;
  double epsilon_used;
  std::shared_ptr<const SimplicialManifold> parent;
  std::vector<double> parent_h_values;
};

/// G(x_{≠j}) = {y ∈ F(x) : y_i = x_j}, queried through F with x_j := y_i.
/// graph_distance is an upper-bound surrogate that vanishes exactly on the
/// graph of G (it is √2-Lipschitz because y_i enters twice).
class CoupledOracle final : public SetValuedOracle {
 public:
  CoupledOracle(std::shared_ptr<const SetValuedOracle> f, std::size_t i, std::size_t j,
                Interval ix_j);

  std::size_t n() const override { return f_->n() - 1; }
  std::size_t m() const override { return f_->m(); }
  bool contains(std::span<const double> x, std::span<const double> y,
                double tol) const override;
  double graph_distance(std::span<const double> x,
                        std::span<const double> y) const override;
  std::optional<Interval> component_bound(std::size_t i) const override;
  /// Solutions of y_i = x_j found by scanning x_j over ix_j and bisecting sign
  /// changes of single-valued samples.
  std::vector<Point> sample_values(std::span<const double> x) const override;

  Point lift(std::span<const double> x, std::span<const double> y) const;

 private:
  std::shared_ptr<const SetValuedOracle> f_;
  std::size_t i_;
  std::size_t j_;
  Interval ix_j_;
};

/// Runs h-composition, regular value selection, level-set extraction and
/// projection for every index of a base sequence.
class JointSlicer {
 public:
  JointSlicer(ApproximationSequence base, SliceConfig cfg, std::optional<Disk> slice_disk);

  SliceResult slice(int k) const;

  const ApproximationSequence& base() const { return base_; }
  const SliceConfig& config() const { return cfg_; }
  /// id' = id ∩ {x_j = theta(0)}, empty when n == 1.
  const std::optional<Disk>& slice_disk() const { return slice_disk_; }

 private:
  ApproximationSequence base_;
  SliceConfig cfg_;
  std::optional<Disk> slice_disk_;
};

struct JointResult {
  std::shared_ptr<const JointSlicer> slicer;
  ApproximationSequence sequence;
  std::shared_ptr<const SetValuedOracle> oracle;
};

/// Checks the hypotheses (n >= 1, m >= 1, tix strictly inside ix_j, the
/// component bound of F_i inside tix) and wires the slicer into a sequence
/// for G together with the derived oracle.
JointResult joint(const ApproximationSequence& seq, const SliceConfig& cfg,
                  std::shared_ptr<const SetValuedOracle> oracle_f, const Box& ix,
                  int hypothesis_grid = 17);

}  // namespace manapprox
