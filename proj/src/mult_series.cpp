#include "ffmean/mult_series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ffmean/simd/kernels.hpp"

namespace ffmean {

Complex unit_exp(double t) {
  const double r = t - std::floor(t);
  const double ang = 2.0 * std::numbers::pi * r;
  return {std::cos(ang), std::sin(ang)};
}

namespace {

std::vector<Complex> with_leading_zero(std::vector<Complex> v) {
  v.insert(v.begin(), Complex{0.0, 0.0});
  return v;
}

std::vector<Rational> with_leading_zero(std::vector<Rational> v) {
  v.insert(v.begin(), Rational(0));
  return v;
}

}  // namespace

ChiSeq::ChiSeq(std::vector<Complex> values_from_1, double kappa)
    : values_(with_leading_zero(std::move(values_from_1))), kappa_(kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("ChiSeq: kappa must be finite and >= 0");
  const double limit = kappa + kKappaTolerance * std::max(1.0, kappa);
  for (std::size_t k = 1; k < values_.size(); ++k) {
    const double a = std::abs(values_[k]);
    if (!std::isfinite(a)) throw std::invalid_argument("ChiSeq: non-finite chi(" + std::to_string(k) + ")");
    if (a > limit)
      throw std::invalid_argument("ChiSeq: |chi(" + std::to_string(k) + ")| = " + std::to_string(a) +
                                  " exceeds kappa = " + std::to_string(kappa));
  }
}

double ChiSeq::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 1; k < values_.size(); ++k) m = std::max(m, std::abs(values_[k]));
  return m;
}

ExactChiSeq::ExactChiSeq(std::vector<Rational> values_from_1, Rational kappa)
    : values_(with_leading_zero(std::move(values_from_1))), kappa_(std::move(kappa)) {
  if (sgn(kappa_) < 0) throw std::invalid_argument("ExactChiSeq: kappa must be >= 0");
  for (std::size_t k = 1; k < values_.size(); ++k)
    if (abs(values_[k]) > kappa_)
      throw std::invalid_argument("ExactChiSeq: |chi(" + std::to_string(k) + ")| = " + to_string(values_[k]) +
                                  " exceeds kappa = " + to_string(kappa_));
}

ChiSeq ExactChiSeq::to_float() const {
  std::vector<Complex> v;
  v.reserve(size());
  for (std::size_t k = 1; k < values_.size(); ++k) v.emplace_back(values_[k].get_d(), 0.0);
  // Rounding can push |chi| an ulp above the rounded kappa; the float
  // tolerance absorbs that.
  return ChiSeq(std::move(v), kappa_.get_d());
}

SigmaSeq sigma_from_chi(const ChiSeq& chi, std::size_t N) {
  if (N > chi.size()) throw std::invalid_argument("sigma_from_chi: need chi(k) for k <= N");
  const auto c = chi.with_zero();
  std::vector<Complex> s(N + 1);
  s[0] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const Complex acc = simd::dot_reversed(c.subspan(1, n), std::span<const Complex>(s.data(), n));
    s[n] = acc / static_cast<double>(n);
  }
  return SigmaSeq{std::move(s)};
}

ExactSigmaSeq sigma_from_chi(const ExactChiSeq& chi, std::size_t N) {
  if (N > chi.size()) throw std::invalid_argument("sigma_from_chi: need chi(k) for k <= N");
  std::vector<Rational> s(N + 1);
  s[0] = 1;
  Rational acc;
  for (std::size_t n = 1; n <= N; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (sgn(chi[k]) != 0) acc += chi[k] * s[n - k];
    s[n] = acc / static_cast<long>(n);
    s[n].canonicalize();
  }
  return ExactSigmaSeq{std::move(s)};
}

ChiSeq chi_from_sigma(const SigmaSeq& sigma) {
  if (sigma.size() == 0 || std::abs(sigma[0] - Complex(1.0)) > 1e-12)
    throw std::invalid_argument("chi_from_sigma: sigma(0) must be 1");
  const std::size_t N = sigma.size() - 1;
  std::vector<Complex> chi(N + 1);
  double kappa = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    Complex acc = static_cast<double>(n) * sigma[n];
    for (std::size_t k = 1; k < n; ++k) acc -= chi[k] * sigma[n - k];
    chi[n] = acc;
    kappa = std::max(kappa, std::abs(acc));
  }
  chi.erase(chi.begin());
  return ChiSeq(std::move(chi), kappa);
}

ExactChiSeq chi_from_sigma(const ExactSigmaSeq& sigma) {
  if (sigma.size() == 0 || sigma[0] != 1) throw std::invalid_argument("chi_from_sigma: sigma(0) must be 1");
  const std::size_t N = sigma.size() - 1;
  std::vector<Rational> chi(N + 1);
  Rational kappa = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    Rational acc = sigma[n] * static_cast<long>(n);
    for (std::size_t k = 1; k < n; ++k) acc -= chi[k] * sigma[n - k];
    chi[n] = acc;
    if (abs(acc) > kappa) kappa = abs(acc);
  }
  chi.erase(chi.begin());
  return ExactChiSeq(std::move(chi), kappa);
}

ChiSeq truncate_perp(const ChiSeq& chi, std::size_t n) {
  if (n < 1) throw std::invalid_argument("truncate_perp: n must be >= 1");
  std::vector<Complex> v(chi.size());
  for (std::size_t m = 1; m <= chi.size(); ++m) v[m - 1] = m < n ? chi[m] : Complex{};
  return ChiSeq(std::move(v), chi.kappa());
}

ExactChiSeq truncate_perp(const ExactChiSeq& chi, std::size_t n) {
  if (n < 1) throw std::invalid_argument("truncate_perp: n must be >= 1");
  std::vector<Rational> v(chi.size());
  for (std::size_t m = 1; m <= chi.size(); ++m) v[m - 1] = m < n ? chi[m] : Rational(0);
  return ExactChiSeq(std::move(v), chi.kappa());
}

ChiSeq twist(const ChiSeq& chi, double theta) {
  std::vector<Complex> v(chi.size());
  for (std::size_t k = 1; k <= chi.size(); ++k) v[k - 1] = chi[k] * unit_exp(-static_cast<double>(k) * theta);
  return ChiSeq(std::move(v), chi.kappa());
}

SigmaSeq twist(const SigmaSeq& sigma, double theta) {
  std::vector<Complex> v(sigma.size());
  for (std::size_t n = 0; n < sigma.size(); ++n) v[n] = sigma[n] * unit_exp(-static_cast<double>(n) * theta);
  return SigmaSeq{std::move(v)};
}

Complex eval_G(const ChiSeq& chi, std::size_t n, Complex w) {
  if (n < 1) throw std::invalid_argument("eval_G: n must be >= 1");
  if (n - 1 > chi.size()) throw std::invalid_argument("eval_G: need chi(k) for k < n");
  Complex s{};
  for (std::size_t k = n - 1; k >= 1; --k) s = (s + chi[k] / static_cast<double>(k)) * w;
  return std::exp(s);
}

std::vector<Complex> exponent_coefficients(const ChiSeq& chi, std::size_t n, double r) {
  if (n < 1) throw std::invalid_argument("exponent_coefficients: n must be >= 1");
  if (n - 1 > chi.size()) throw std::invalid_argument("exponent_coefficients: need chi(k) for k < n");
  std::vector<Complex> c(n);
  double rk = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    rk *= r;
    c[k] = chi[k] * (rk / static_cast<double>(k));
  }
  return c;
}

double trivial_bound(double kappa, std::size_t n) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("trivial_bound: kappa must be >= 0");
  double p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= (kappa + static_cast<double>(j)) / static_cast<double>(j + 1);
  return p;
}

}  // namespace ffmean
