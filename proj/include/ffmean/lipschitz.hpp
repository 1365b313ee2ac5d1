#pragma once

// Lipschitz machinery: the maximizing twist, L(n, l; theta), L*(n, l; alpha),
// the resonance constants c_m, rational approximation and the local estimate
// for L*, and the explicit and asymptotic Lipschitz inequalities.

#include <cstddef>
#include <string>
#include <utility>

#include "ffmean/halasz_bounds.hpp"
#include "ffmean/mult_series.hpp"

namespace ffmean {

struct ThetaStar {
  double theta = 0;      ///< in [0, 1)
  double value = 0;      ///< Re sum_{j<n} chi(j) e(-j theta)/j at theta
  double upper = 0;      ///< certified upper bound on the global max
};

/// theta maximizing Re sum_{j=1}^{n-1} chi(j) e(-j theta) / j, to 1e-8 in
/// the objective by default.
ThetaStar best_theta(const ChiSeq& chi, std::size_t n, double tol = 1e-8);

/// L(n, l; theta) = max_{|z|=1} |(1 - z^l) exp(sum_{j<n} chi_theta(j) z^j / j)|.
CertifiedMax L_value(const ChiSeq& chi, std::size_t n, std::size_t ell, double theta, double rel_tol = 1e-6);

/// 5l + 3L + L log(2n/L) + 2, with the log term floored at 0 (and 0 at L = 0).
double prop1_rhs(std::size_t n, std::size_t ell, double L);

struct LipschitzReport {
  std::size_t n = 0, ell = 0, m0 = 0;
  double theta_star = 0;
  double L = 0;
  double lhs = 0;         ///< n |sigma_theta(n+l) - sigma_theta(n)|
  double prop1_rhs = 0;
  double thm2_term1 = 0;  ///< (l/n)^{1-2/pi} log(2n/l)
  double thm2_term2 = 0;  ///< (log n)^{2-2/pi} / n^{1-c_{m0}}
  double thm2_lhs = 0;    ///< |sigma_theta(n+l) - sigma_theta(n)|
  double modulus_lhs = 0; ///< ||sigma(n+l)| - |sigma(n)||
  bool prop1_pass = false;
  bool thm2_pass = false;
};

/// Needs chi(k) for k <= n + l; kappa <= 1; 1 <= l <= n.
LipschitzReport prop1_verify(const ChiSeq& chi, std::size_t n, std::size_t ell, double allowance = 1e-6);
/// Adds the asymptotic Lipschitz check with constant K.
LipschitzReport theorem2_verify(const ChiSeq& chi, std::size_t n, std::size_t ell, double K = 64.0);

std::string lipschitz_csv_header();
std::string lipschitz_csv_row(const LipschitzReport& r);

// ---- c_m ------------------------------------------------------------------

/// (1/m) sum_{a<m} |cos(pi a / m)|
double c_m_sum(std::size_t m);
/// cosec(pi/2m)/m for odd m, cot(pi/2m)/m for even m
double c_m_closed(std::size_t m);
/// (2/pi)(1 - 2 sum_{m | r, r <= r_max} (-1)^r/(4r^2-1)) plus a tail
/// correction; tail_bound receives a bound on what remains.
double c_m_series(std::size_t m, double* tail_bound = nullptr, std::size_t r_max = 1'000'000);

struct CmValue {
  std::size_t m;
  double sum, closed, series;
  double max_disagreement() const;
};
CmValue c_m(std::size_t m);

/// 2/pi - sum_{r=1}^{R} ((-1)^r / (2 pi (r^2 - 1/4))) 2 cos(2 pi r t), the
/// Fourier partial sum of |cos(pi t)|.
double abs_cos_fourier(double t, std::size_t R);

// ---- L* and its estimates ----------------------------------------------------

/// ||t||, distance to the nearest integer.
double dist_to_int(double t);

/// L*(n, l; alpha) = |1 - e(l alpha)| exp(sum_{k<n} |cos(pi k alpha)| / k)
double L_star(std::size_t n, std::size_t ell, double alpha);

/// Returns (Re sum chi_theta(j) e(j alpha/2) cos(pi j alpha) / j,
/// sum |cos(pi j alpha)| / j) for the extremal chi(k) = sign(cos(pi k alpha)).
std::pair<double, double> lemma2_sharpness(std::size_t n, double alpha);

/// |(1 - e(alpha)^l) exp(sum_{j<n} chi_theta(j) e(j alpha) / j)|
double lemma2_lhs(const ChiSeq& chi, std::size_t n, std::size_t ell, double theta, double alpha);

struct RationalApprox {
  double alpha = 0;
  long b = 0;
  long m = 1;
  long R = 0;
};
/// Smallest m <= 2R (R = ceil(log n)) with |alpha - b/m| <= 1/(2mR), gcd(b,m) = 1.
RationalApprox rational_approx(double alpha, std::size_t n);

/// (t)_m: least absolute residue of t mod m.
long least_abs_residue(long t, long m);

/// exp(-(4/pi) sum_{1 <= r <= log m} ((-1)^r/(4r^2-1)) log(m / |(rb)_m|))
double remark10_factor(long m, long b);

/// ||l alpha|| n^{2/pi} min(n, 1/||m alpha||)^{c_m - 2/pi} remark10_factor(m, b)
double lemma3_estimate(std::size_t n, std::size_t ell, double alpha);

/// Smallest odd m not dividing l.
std::size_t m0_of(std::size_t ell);

struct LStarMax {
  double value = 0;    ///< certified upper bound
  double lower = 0;    ///< L* at the witness
  double witness = 0;  ///< alpha
  std::size_t evaluations = 0;
};
/// Certified max over alpha in [0, 1) of L*(n, l; alpha).
LStarMax max_L_star(std::size_t n, std::size_t ell, double rel_tol = 1e-6);

}  // namespace ffmean
