#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ffmean {

struct QuadResult {
  double value = 0;
  double abs_error = 0;  ///< sum of |K15 - G7| over the final panels
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b], pre-split at the given
/// interior breakpoints. Bisects the panel with the largest error until the
/// summed error is below rel_tol * |value| (or abs_tol), or max_panels is hit.
QuadResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                          const std::vector<double>& breakpoints, double rel_tol, double abs_tol = 0.0,
                          std::size_t max_panels = 4000);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};
GaussRule gauss_legendre01(std::size_t points);

}  // namespace ffmean
