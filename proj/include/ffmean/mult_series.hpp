#pragma once

// Mean-value sequences of multiplicative functions on F_q[x].
//
// A ChiSeq holds chi(1..N), the prime-power averages; a SigmaSeq holds
// sigma(0..N), the mean values over monic polynomials of each degree. They
// are tied by n*sigma(n) = sum_{k=1..n} chi(k) sigma(n-k), equivalently
// sum sigma(n) w^n = exp(sum chi(k) w^k / k).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ffmean/rational.hpp"

namespace ffmean {

using Complex = std::complex<double>;

enum class NumberMode { exact_rational, complex_float };

inline constexpr double kKappaTolerance = 1e-12;

/// e(t) = exp(2 pi i t), with t reduced mod 1 before the trig call.
Complex unit_exp(double t);

/// chi(1..N) with |chi(k)| <= kappa (+1e-12). Index 0 reads as 0.
class ChiSeq {
 public:
  ChiSeq(std::vector<Complex> values_from_1, double kappa);

  double kappa() const noexcept { return kappa_; }
  std::size_t size() const noexcept { return values_.size() - 1; }
  /// chi(k) for 0 <= k <= size(); chi(0) = 0.
  Complex operator[](std::size_t k) const { return values_.at(k); }
  /// Storage including the leading chi(0) = 0.
  std::span<const Complex> with_zero() const noexcept { return values_; }

  /// Largest |chi(k)| actually present.
  double max_abs() const;

 private:
  std::vector<Complex> values_;
  double kappa_;
};

/// Exact-mode counterpart: rational chi values, bound enforced strictly.
class ExactChiSeq {
 public:
  ExactChiSeq(std::vector<Rational> values_from_1, Rational kappa);

  const Rational& kappa() const noexcept { return kappa_; }
  std::size_t size() const noexcept { return values_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return values_.at(k); }
  std::span<const Rational> with_zero() const noexcept { return values_; }

  ChiSeq to_float() const;

 private:
  std::vector<Rational> values_;
  Rational kappa_;
};

/// sigma(0..N), sigma(0) = 1.
struct SigmaSeq {
  std::vector<Complex> values;
  std::size_t size() const noexcept { return values.size(); }
  Complex operator[](std::size_t n) const { return values.at(n); }
};

struct ExactSigmaSeq {
  std::vector<Rational> values;
  std::size_t size() const noexcept { return values.size(); }
  const Rational& operator[](std::size_t n) const { return values.at(n); }
};

/// sigma(0..N) from the convolution recurrence. Needs chi up to N.
SigmaSeq sigma_from_chi(const ChiSeq& chi, std::size_t N);
ExactSigmaSeq sigma_from_chi(const ExactChiSeq& chi, std::size_t N);

/// Inverse of sigma_from_chi: chi(n) = n sigma(n) - sum_{k<n} chi(k) sigma(n-k).
/// The returned kappa is the observed max |chi(k)|; no bound is asserted.
ChiSeq chi_from_sigma(const SigmaSeq& sigma);
ExactChiSeq chi_from_sigma(const ExactSigmaSeq& sigma);

/// chi-perp for truncation degree n: chi(m) kept for m < n, zeroed for m >= n.
ChiSeq truncate_perp(const ChiSeq& chi, std::size_t n);
ExactChiSeq truncate_perp(const ExactChiSeq& chi, std::size_t n);

/// chi_theta(k) = chi(k) e(-k theta).
ChiSeq twist(const ChiSeq& chi, double theta);
SigmaSeq twist(const SigmaSeq& sigma, double theta);

/// G(w) = exp(sum_{k=1}^{n-1} chi(k) w^k / k), the scaled generating function of
/// the truncation at n. Horner on the exponent, then one exp.
Complex eval_G(const ChiSeq& chi, std::size_t n, Complex w);

/// Exponent coefficients c_k = chi(k) r^k / k for k < n (c_0 = 0), the form
/// the circle kernels consume.
std::vector<Complex> exponent_coefficients(const ChiSeq& chi, std::size_t n, double r = 1.0);

/// binom(kappa + n - 1, n) by the running product.
double trivial_bound(double kappa, std::size_t n);

}  // namespace ffmean
