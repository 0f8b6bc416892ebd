#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "manapprox/geometry.hpp"

namespace manapprox {

/// Single-valued map f: domain ⊆ R^n -> R^m with declared per-component
/// range enclosures over the domain. eval must be deterministic and total on
/// its domain (callers may also evaluate outside it when f extends naturally).
class ContinuousFunction {
 public:
  using Eval = std::function<void(std::span<const double> x, std::span<double> y)>;

  ContinuousFunction(Box domain, std::size_t m, Eval eval,
                     std::vector<Interval> ranges);

  std::size_t n() const { return domain_.dim(); }
  std::size_t m() const { return m_; }
  const Box& domain() const { return domain_; }
  /// Enclosure of component i over the domain.
  const std::vector<Interval>& ranges() const { return ranges_; }
  /// Upper bound on |f(x)| over the domain, from the range enclosures.
  double sup_bound() const;

  void eval(std::span<const double> x, std::span<double> y) const { eval_(x, y); }
  Point operator()(std::span<const double> x) const;

 private:
  Box domain_;
  std::size_t m_;
  Eval eval_;
  std::vector<Interval> ranges_;
};

}  // namespace manapprox
