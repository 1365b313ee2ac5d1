#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ffmean/simd/kernels.hpp"
#include "kernel_common.hpp"

namespace ffmean::simd::scalar {

void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv) {
  if (value.size() < phases.size() || wderiv.size() < phases.size())
    throw std::invalid_argument("eval_poly_circle: output spans too small");
  const std::size_t K = coeffs.size();
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto [c, s] = detail::circle_point(phases[i]);
    const double wr = r * c;
    const double wi = r * s;
    double pr = 0, pi = 0, dr = 0, di = 0;
    for (std::size_t k = K; k-- > 0;) {
      const double cr = coeffs[k].real();
      const double ci = coeffs[k].imag();
      const double kk = static_cast<double>(k);
      const double npr = pr * wr - pi * wi + cr;
      const double npi = pr * wi + pi * wr + ci;
      const double ndr = dr * wr - di * wi + kk * cr;
      const double ndi = dr * wi + di * wr + kk * ci;
      pr = npr, pi = npi, dr = ndr, di = ndi;
    }
    value[i] = {pr, pi};
    wderiv[i] = {dr, di};
  }
}

void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out) {
  if (out.size() < alphas.size()) throw std::invalid_argument("abs_cos_sums: output span too small");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    const auto [ur, ui] = detail::half_turn_point(a, 1);
    double pr = ur, pi = ui, acc = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (k % detail::kReseedInterval == 0) {
        const auto p = detail::half_turn_point(a, k);
        pr = p.first, pi = p.second;
      }
      acc += std::abs(pr) * (1.0 / static_cast<double>(k));
      const double npr = pr * ur - pi * ui;
      const double npi = pr * ui + pi * ur;
      pr = npr, pi = npi;
    }
    out[i] = acc;
  }
}

Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_reversed: length mismatch");
  const std::size_t len = a.size();
  double re = 0, im = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const Complex x = a[i];
    const Complex y = b[len - 1 - i];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace ffmean::simd::scalar
