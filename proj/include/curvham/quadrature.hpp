#pragma once

#include <functional>
#include <vector>

namespace curvham {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);

  /// Integrate f over [a, b].
  double integrate(double a, double b, const std::function<double(double)>& f) const;
};

}  // namespace curvham
