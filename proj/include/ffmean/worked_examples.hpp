#pragma once

// Worked examples: binomial mean values, smooth polynomials against the
// Dickman function, periodic sign patterns and their DFT, the m = 3 closed
// form, point-mass asymptotics, and recovery of the roots of a terminating
// generating function.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffmean/mult_series.hpp"

namespace ffmean::examples {

// ---- binomial mean values ---------------------------------------------------

/// binom(alpha + n - 1, n) = prod_{j<n} (alpha + j)/(j + 1)
Complex binomial_sigma(Complex alpha, std::size_t n);
Rational binomial_sigma(const Rational& alpha, std::size_t n);

// ---- Dickman rho --------------------------------------------------------------

/// rho on a uniform grid. rho = 1 on [0,1], 1 - log u on [1,2]; beyond 2 each
/// node solves u rho(u) = int_{u-1}^{u} rho by the trapezoid rule with its
/// endpoint-derivative correction (rho' is known from the delay equation).
/// Evaluation interpolates cubically with a stencil that stays inside one
/// unit interval, where rho is smooth.
class DickmanTable {
 public:
  explicit DickmanTable(double h = 1.0 / 1024.0, double u_max = 64.0);

  double operator()(double u) const;
  double step() const noexcept { return h_; }
  double u_max() const noexcept { return u_max_; }

 private:
  double h_;
  double u_max_;
  std::size_t per_unit_;
  std::vector<double> rho_;
};

/// Default table (h = 2^-10, u_max = 64), built once.
const DickmanTable& default_dickman();
double dickman_rho(double u);

/// Max |rho_h(u) - rho_{h/2}(u)| over the given points.
double dickman_step_halving_error(const std::vector<double>& points, double h = 1.0 / 1024.0);

/// chi(l) = 1 for l <= m, 0 beyond; sigma(0..N).
SigmaSeq smooth_sigma(std::size_t m, std::size_t N);
ChiSeq smooth_chi(std::size_t m, std::size_t N);

// ---- periodic patterns ----------------------------------------------------------

/// chi(k) = sign(cos(2 pi k / m)) for odd m, k = 1..N.
ChiSeq periodic_chi(std::size_t m, std::size_t N);
/// hat chi(j) = (1/m) sum_{k=1}^{m} chi(k) e(-j k / m), j = 0..m-1, from one period.
std::vector<Complex> hat_chi(const std::vector<Complex>& period);

/// sigma(j) for the m = 3 sign pattern: sigma(3n) = -sigma(3n+1) =
/// prod_{i=1}^{n} (i - 1/3)/i and sigma(3n+2) = 0.
double m3_closed_form(std::size_t j);
Rational m3_closed_form_exact(std::size_t j);

// ---- point masses ---------------------------------------------------------------------

struct PointMassConfig {
  std::vector<double> alphas;    ///< points e(alpha_j), distinct mod 1
  std::vector<Complex> weights;  ///< a_j, |a_j| <= 1
};

void validate(const PointMassConfig& c);
/// chi(k) = sum_j a_j e(-k alpha_j), k = 1..N.
ChiSeq point_mass_chi(const PointMassConfig& c, std::size_t N);
/// sum_j C0(j) e(-n alpha_j) n^{a_j - 1} / Gamma(a_j),
/// C0(j) = prod_{l != j} (1 - e(alpha_j - alpha_l))^{-a_l} (principal branch).
Complex example9_main_term(const PointMassConfig& c, std::size_t n);
/// k points uniform in [0,1), weights uniform on {|a| <= 1, Re a <= 1},
/// std::mt19937_64 as in the random ChiSpec.
PointMassConfig random_point_mass(std::uint64_t seed, std::size_t k);
/// The m = 3 sign pattern as point masses at the cube roots of unity.
PointMassConfig m3_point_mass();

/// 1/Gamma(z) for complex z (Lanczos with reflection); entire, so zero at
/// the non-positive integers.
Complex rgamma(Complex z);

// ---- root recovery ------------------------------------------------------------------------

struct RootRecovery {
  std::vector<Complex> alphas;  ///< prod (1 - z alpha_j) = sum sigma(n) (q z)^n
  std::size_t k = 0;
  double max_residual = 0;      ///< max |poly(beta_j)| / scale
};

/// sigma must terminate: sigma(k) != 0 and sigma(n) = 0 for k < n < size.
/// Throws if no trailing zero is present or the roots leave |alpha| <= q(1+1e-9).
RootRecovery remark7_roots(const SigmaSeq& sigma, double q, double zero_tol = 1e-12);

/// -sum_j alpha_j^l / q^l, the chi(l) implied by the roots.
Complex chi_from_roots(const RootRecovery& r, double q, std::size_t ell);

/// Number of roots with ||alpha| - q| <= tol * q.
std::size_t roots_on_circle(const RootRecovery& r, double q, double tol = 1e-6);

/// sigma(0..k) from prod_j (1 - w beta_j) with beta_j = alpha_j / q.
SigmaSeq sigma_from_roots(const std::vector<Complex>& alphas, double q);

}  // namespace ffmean::examples
