#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on x86,
// an AVX2+FMA variant; the public entry points dispatch at runtime. The
// per-ISA namespaces are exposed so tests can check the two agree.
//
// Set FFMEAN_SIMD=scalar in the environment to pin the scalar path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ffmean::simd {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Overrides the dispatch choice (throws if the ISA is unavailable).
void force_isa(Isa isa);

/// For each phase phi_i evaluates, at w = r e(phi_i),
///   value[i] = sum_k c_k w^k   and   wderiv[i] = sum_k k c_k w^k.
void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv);

/// out[i] = sum_{k=1}^{n-1} |cos(pi k alpha_i)| / k
void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out);

/// sum_i a[i] * b[len-1-i]  (the convolution term of the sigma recurrence)
Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b);

namespace scalar {
void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv);
void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out);
Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace scalar

namespace avx2 {
void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv);
void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out);
Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace avx2

}  // namespace ffmean::simd
