// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <array>
#include <stdexcept>

#include "ffmean/simd/kernels.hpp"
#include "kernel_common.hpp"

namespace ffmean::simd::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv) {
  if (value.size() < phases.size() || wderiv.size() < phases.size())
    throw std::invalid_argument("eval_poly_circle: output spans too small");
  const std::size_t K = coeffs.size();
  const std::size_t full = phases.size() / 4 * 4;

  alignas(32) std::array<double, 4> wr_a, wi_a, out_pr, out_pi, out_dr, out_di;
  for (std::size_t i = 0; i < full; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const auto [c, s] = detail::circle_point(phases[i + l]);
      wr_a[l] = r * c;
      wi_a[l] = r * s;
    }
    const __m256d wr = _mm256_load_pd(wr_a.data());
    const __m256d wi = _mm256_load_pd(wi_a.data());
    __m256d pr = _mm256_setzero_pd(), pi = _mm256_setzero_pd();
    __m256d dr = _mm256_setzero_pd(), di = _mm256_setzero_pd();
    for (std::size_t k = K; k-- > 0;) {
      const double kk = static_cast<double>(k);
      const __m256d cr = _mm256_set1_pd(coeffs[k].real());
      const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
      const __m256d kcr = _mm256_set1_pd(kk * coeffs[k].real());
      const __m256d kci = _mm256_set1_pd(kk * coeffs[k].imag());
      const __m256d npr = _mm256_fnmadd_pd(pi, wi, _mm256_fmadd_pd(pr, wr, cr));
      const __m256d npi = _mm256_fmadd_pd(pr, wi, _mm256_fmadd_pd(pi, wr, ci));
      const __m256d ndr = _mm256_fnmadd_pd(di, wi, _mm256_fmadd_pd(dr, wr, kcr));
      const __m256d ndi = _mm256_fmadd_pd(dr, wi, _mm256_fmadd_pd(di, wr, kci));
      pr = npr, pi = npi, dr = ndr, di = ndi;
    }
    _mm256_store_pd(out_pr.data(), pr);
    _mm256_store_pd(out_pi.data(), pi);
    _mm256_store_pd(out_dr.data(), dr);
    _mm256_store_pd(out_di.data(), di);
    for (std::size_t l = 0; l < 4; ++l) {
      value[i + l] = {out_pr[l], out_pi[l]};
      wderiv[i + l] = {out_dr[l], out_di[l]};
    }
  }
  if (full < phases.size())
    scalar::eval_poly_circle(coeffs, r, phases.subspan(full), value.subspan(full), wderiv.subspan(full));
}

void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out) {
  if (out.size() < alphas.size()) throw std::invalid_argument("abs_cos_sums: output span too small");
  const std::size_t full = alphas.size() / 4 * 4;
  alignas(32) std::array<double, 4> ur_a, ui_a, pr_a, pi_a, acc_a;
  for (std::size_t i = 0; i < full; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const auto [c, s] = detail::half_turn_point(alphas[i + l], 1);
      ur_a[l] = c;
      ui_a[l] = s;
    }
    const __m256d ur = _mm256_load_pd(ur_a.data());
    const __m256d ui = _mm256_load_pd(ui_a.data());
    __m256d pr = ur, pi = ui, acc = _mm256_setzero_pd();
    for (std::size_t k = 1; k < n; ++k) {
      if (k % detail::kReseedInterval == 0) {
        for (std::size_t l = 0; l < 4; ++l) {
          const auto [c, s] = detail::half_turn_point(alphas[i + l], k);
          pr_a[l] = c;
          pi_a[l] = s;
        }
        pr = _mm256_load_pd(pr_a.data());
        pi = _mm256_load_pd(pi_a.data());
      }
      acc = _mm256_fmadd_pd(abs_pd(pr), _mm256_set1_pd(1.0 / static_cast<double>(k)), acc);
      const __m256d npr = _mm256_fnmadd_pd(pi, ui, _mm256_mul_pd(pr, ur));
      const __m256d npi = _mm256_fmadd_pd(pr, ui, _mm256_mul_pd(pi, ur));
      pr = npr, pi = npi;
    }
    _mm256_store_pd(acc_a.data(), acc);
    for (std::size_t l = 0; l < 4; ++l) out[i + l] = acc_a[l];
  }
  if (full < alphas.size()) scalar::abs_cos_sums(n, alphas.subspan(full), out.subspan(full));
}

Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_reversed: length mismatch");
  const std::size_t len = a.size();
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  // Two complex numbers per register; b is walked backwards, so each loaded
  // pair is swapped into place with a 128-bit lane permute.
  auto step = [&](std::size_t idx, __m256d& acc) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * idx);
    const __m256d yraw = _mm256_loadu_pd(pb + 2 * (len - 2 - idx));
    const __m256d y = _mm256_permute2f128_pd(yraw, yraw, 0x01);
    const __m256d yre = _mm256_movedup_pd(y);
    const __m256d yim = _mm256_permute_pd(y, 0xF);
    const __m256d xsw = _mm256_permute_pd(x, 0x5);
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(x, yre, _mm256_mul_pd(xsw, yim)));
  };
  for (; i + 4 <= len; i += 4) {
    step(i, acc0);
    step(i + 2, acc1);
  }
  for (; i + 2 <= len; i += 2) step(i, acc0);
  alignas(32) std::array<double, 4> s;
  _mm256_store_pd(s.data(), _mm256_add_pd(acc0, acc1));
  double re = s[0] + s[2], im = s[1] + s[3];
  for (; i < len; ++i) {
    const Complex x = a[i];
    const Complex y = b[len - 1 - i];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re, im};
}

}  // namespace ffmean::simd::avx2
