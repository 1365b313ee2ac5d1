#pragma once

// Certified global maxima over the circle of
//
//   Phi(phi) = A(phi) * exp(h(phi)),   h(phi) = Re sum_k c_k e(k phi),
//
// where A is either 1 or the factor |1 - e(ell phi)| = 2|sin(pi ell phi)|.
//
// Branch and bound in log space. Each cell [g - d, g + d] gets the upper
// bound h(g) + |h'(g)| d + D2 d^2 / 2 with D2 = 4 pi^2 sum k^2 |c_k| >= |h''|,
// and A(g) + 2 pi ell |cos(pi ell g)| d + pi^2 ell^2 d^2 (capped at 2) for the
// prefactor. Cells whose bound cannot beat the best sample by more than the
// tolerance are discarded; the rest are halved. The reported value is the
// largest bound among discarded cells, so it is a rigorous upper bound up to
// floating-point rounding in h, which is added explicitly.

#include <cstddef>
#include <span>

#include "ffmean/mult_series.hpp"

namespace ffmean {

struct CircleMaxOptions {
  /// Target relative gap between the certified value and the best sample.
  double rel_tol = 1e-6;
  /// Initial number of uniform cells; 0 means 8 * (number of coefficients).
  std::size_t initial_cells = 0;
  /// Hard cap on cell evaluations; exceeding it throws.
  std::size_t max_evaluations = 200'000'000;
  /// Newton-polish the best sample (only without a prefactor).
  bool polish = true;
};

struct LogMax {
  double log_upper = 0;    ///< certified upper bound on log max Phi
  double log_lower = 0;    ///< log Phi at the witness
  double witness = 0;      ///< phase phi in [0, 1) of the best sample
  std::size_t evaluations = 0;
  std::size_t initial_cells = 0;
};

/// c_k indexed from 0 (c_0 is ignored by h's derivatives but included in h).
/// prefactor_ell = 0 means A = 1.
LogMax certified_log_max(std::span<const Complex> coeffs, std::size_t prefactor_ell,
                         const CircleMaxOptions& opts = {});

/// Plain sampling of log Phi on a uniform grid (no certification); used to
/// cross-check the certified routine.
LogMax sampled_log_max(std::span<const Complex> coeffs, std::size_t prefactor_ell, std::size_t grid_points);

/// h(phi), h'(phi), h''(phi) by direct summation.
struct TrigJet {
  double h, dh, d2h;
};
TrigJet trig_jet(std::span<const Complex> coeffs, double phi);

}  // namespace ffmean
