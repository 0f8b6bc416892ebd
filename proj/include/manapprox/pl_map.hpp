#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "manapprox/geometry.hpp"
#include "manapprox/simplicial.hpp"

namespace manapprox {

/// Piecewise-linear map from a simplicial manifold into R^target_dim, given by
/// one value per vertex and barycentric interpolation inside simplices.
class PLMap {
 public:
  /// `values` holds target_dim doubles per vertex id of the carrier.
  PLMap(std::shared_ptr<const SimplicialManifold> carrier,
        std::size_t target_dim, std::vector<double> values);

  const SimplicialManifold& carrier() const { return *carrier_; }
  const std::shared_ptr<const SimplicialManifold>& carrier_ptr() const {
    return carrier_;
  }
  std::size_t target_dim() const { return target_dim_; }
  std::span<const double> value(VertexId v) const {
    return {values_.data() + static_cast<std::size_t>(v) * target_dim_, target_dim_};
  }
  const std::vector<double>& values() const { return values_; }

  Point evaluate(const ManifoldPoint& p) const;

 private:
  std::shared_ptr<const SimplicialManifold> carrier_;
  std::size_t target_dim_;
  std::vector<double> values_;
};

/// One element (M^(k), g^(k)) of an approximation sequence.
struct SequenceItem {
  PLMap map;

  const SimplicialManifold& manifold() const { return map.carrier(); }
};

/// Indexed family of (manifold, PL map) pairs. item(k) must be a pure
/// function of k. Maps land in R^(n+m); the first n coordinates are the
/// x-block, the last m the y-block.
class ApproximationSequence {
 public:
  using Generator = std::function<SequenceItem(int k)>;

  /// `disk` may be empty only when n == 0.
  ApproximationSequence(std::size_t n, std::size_t m, std::optional<Disk> disk,
                        double declared_bound, Generator generator);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::optional<Disk>& disk() const { return disk_; }
  double declared_bound() const { return declared_bound_; }

  SequenceItem item(int k) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::optional<Disk> disk_;
  double declared_bound_;
  Generator generator_;
};

}  // namespace manapprox
