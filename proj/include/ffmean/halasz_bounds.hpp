#pragma once

// Halasz-type bounds: certified maxima of G on circles, the t-integral of
// the main Halasz-type inequality, the logarithmic saving M and the closed-form bound.

#include <cstddef>
#include <string>

#include "ffmean/certified_max.hpp"
#include "ffmean/mult_series.hpp"

namespace ffmean {

struct CertifiedMax {
  double r = 0;
  double value = 0;          ///< certified upper bound on max_{|w|=r} |G(w)|
  double lower_witness = 0;  ///< |G| at the best sample
  double witness_phase = 0;
  std::size_t grid_points = 0;  ///< cells evaluated
  double certification_gap = 0; ///< value - lower_witness
};

/// max_{|w|=r} |G(w)| for G(w) = exp(sum_{k<n} chi(k) w^k / k), 0 < r <= 1.
CertifiedMax certified_circle_max(const ChiSeq& chi, std::size_t n, double r, double rel_tol = 1e-6);

struct HalaszIntegralOptions {
  double rel_tol = 1e-5;     ///< quadrature target (relative)
  double max_rel_tol = 1e-6; ///< circle-max certification tolerance
  int max_depth = 40;
};

/// int_0^1 max_{|w|=sqrt t}|G(w)| (1 - t^{n-1})/(1 - t) dt, computed after
/// t = (1-u)^2 by adaptive Gauss-Kronrod (7/15) on [0,1] split at
/// u = 1/(2n) and u = e^{M/kappa}/(2n). Integrand values are certified
/// maxima and the returned value includes the absolute error estimate.
double halasz_integral(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts = {});

/// (kappa^2 / n) * halasz_integral. n >= 2.
double halasz_integral_rhs(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts = {});

/// M = kappa log(2n) - log max_{|w|=1}|G(w)| (certified max, so M is a lower
/// estimate of the true M up to the certification gap).
double compute_M(const ChiSeq& chi, std::size_t n, double kappa);

/// 2 kappa (kappa + 1 + M) e^{-M} (2n)^{kappa - 1}. Rejects M < 0.
double corollary_rhs(double kappa, double M, std::size_t n);

struct HalaszReport {
  std::size_t n = 0;
  double kappa = 0;
  double lhs_perp = 0;
  double lhs_full = 0;
  double integral_rhs = 0;  ///< (kappa^2/n) * integral
  double M = 0;
  double corollary_rhs = 0;
  double slack_theorem = 0;    ///< min(rhs - |sigma_perp|, rhs + kappa/n - |sigma|)
  double slack_corollary = 0;  ///< corollary_rhs - |sigma|
  double cert_gap = 0;         ///< relative gap of the |w|=1 maximum
  bool perp_relation_ok = false;  ///< |sigma| <= |sigma_perp| + kappa/n

  bool passes(double floor = -1e-9) const {
    return slack_theorem >= floor && slack_corollary >= floor && perp_relation_ok;
  }
};

/// Needs chi(k) for k <= n.
HalaszReport verify_halasz(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts = {});

std::string halasz_csv_header();
std::string halasz_csv_row(const HalaszReport& r);

/// Angular mean of |sum_{j<n} chi(j) (R w)^j|^2 over |w| = 1 by the
/// trapezoid rule on `points` nodes, and the Parseval value sum |chi(j)|^2 R^{2j}.
double parseval_mean_square(const ChiSeq& chi, std::size_t n, double R, std::size_t points = 1u << 14);
double parseval_sum(const ChiSeq& chi, std::size_t n, double R);

/// Double integral of the Cauchy-formula decomposition for a chi supported
/// below n (so the Lambda_f term vanishes), in the scaled variable w = q z on
/// |w| = rho:
///   int_0^1 (1/2 pi i) oint P(w) P(t w) G(t w) dw / w^{n+1} dt / t,
/// with P(w) = sum_{j<n} chi(j) w^j. Equals n * sigma_perp(n).
Complex lemma1_double_integral(const ChiSeq& chi, std::size_t n, double rho = 0.5);

}  // namespace ffmean
