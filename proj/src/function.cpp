#include "manapprox/function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "manapprox/errors.hpp"

namespace manapprox {

ContinuousFunction::ContinuousFunction(Box domain, std::size_t m, Eval eval,
                                       std::vector<Interval> ranges)
    : domain_(std::move(domain)), m_(m), eval_(std::move(eval)),
      ranges_(std::move(ranges)) {
  if (m_ == 0) throw DimensionError("function needs at least one output");
  if (ranges_.size() != m_) throw DimensionError("one range enclosure per output");
  if (!eval_) throw std::invalid_argument("function needs an evaluator");
  for (const auto& r : ranges_) {
    if (!std::isfinite(r.lo()) || !std::isfinite(r.hi())) {
      throw std::invalid_argument("range enclosure must be bounded");
    }
  }
}

double ContinuousFunction::sup_bound() const {
  double sq = 0.0;
  for (const auto& r : ranges_) {
    double a = std::max(std::abs(r.lo()), std::abs(r.hi()));
    sq += a * a;
  }
  return std::sqrt(sq);
}

Point ContinuousFunction::operator()(std::span<const double> x) const {
  Point y(m_);
  eval_(x, y);
  return y;
}

}  // namespace manapprox
