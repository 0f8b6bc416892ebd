#include "manapprox/pl_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "manapprox/errors.hpp"

namespace manapprox {

PLMap::PLMap(std::shared_ptr<const SimplicialManifold> carrier,
             std::size_t target_dim, std::vector<double> values)
    : carrier_(std::move(carrier)), target_dim_(target_dim), values_(std::move(values)) {
  if (!carrier_) throw std::invalid_argument("PL map needs a carrier manifold");
  if (values_.size() != carrier_->vertex_count() * target_dim_) {
    throw std::invalid_argument("PL map needs one value per carrier vertex");
  }
}

Point PLMap::evaluate(const ManifoldPoint& p) const {
  if (p.simplex >= carrier_->simplex_count()) {
    throw std::out_of_range("unknown simplex id " + std::to_string(p.simplex));
  }
  auto verts = carrier_->simplex(p.simplex);
  if (p.barycentric.size() != verts.size()) {
    throw DimensionError("barycentric coordinate count does not match simplex");
  }
  Point out(target_dim_, 0.0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    double w = p.barycentric[i];
    if (w == 0.0) continue;
    auto v = value(verts[i]);
    for (std::size_t c = 0; c < target_dim_; ++c) out[c] += w * v[c];
  }
  return out;
}

ApproximationSequence::ApproximationSequence(std::size_t n, std::size_t m,
                                             std::optional<Disk> disk,
                                             double declared_bound,
                                             Generator generator)
    : n_(n), m_(m), disk_(std::move(disk)), declared_bound_(declared_bound),
      generator_(std::move(generator)) {
  if (n_ > 0 && (!disk_ || disk_->dim() != n_)) {
    throw DimensionError("sequence disk must live in R^n");
  }
  if (!(declared_bound_ >= 0.0) || !std::isfinite(declared_bound_)) {
    throw std::invalid_argument("declared bound must be finite and nonnegative");
  }
  if (!generator_) throw std::invalid_argument("sequence needs a generator");
}

SequenceItem ApproximationSequence::item(int k) const {
  if (k < 0) throw std::out_of_range("sequence index must be nonnegative");
  SequenceItem it = generator_(k);
  if (it.map.target_dim() != n_ + m_) {
    throw DimensionError("sequence item has the wrong target dimension");
  }
  return it;
}

}  // namespace manapprox
