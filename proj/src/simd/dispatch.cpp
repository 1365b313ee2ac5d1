#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ffmean/simd/kernels.hpp"

namespace ffmean::simd {

namespace {

Isa detect() {
  if (const char* env = std::getenv("FFMEAN_SIMD"); env && std::string(env) == "scalar") return Isa::scalar;
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(FFMEAN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("requested ISA not available on this CPU/build");
  current().store(isa, std::memory_order_relaxed);
}

#if defined(FFMEAN_HAVE_AVX2)
#define FFMEAN_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define FFMEAN_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void eval_poly_circle(std::span<const Complex> coeffs, double r, std::span<const double> phases,
                      std::span<Complex> value, std::span<Complex> wderiv) {
  FFMEAN_DISPATCH(eval_poly_circle, coeffs, r, phases, value, wderiv);
}

void abs_cos_sums(std::size_t n, std::span<const double> alphas, std::span<double> out) {
  FFMEAN_DISPATCH(abs_cos_sums, n, alphas, out);
}

Complex dot_reversed(std::span<const Complex> a, std::span<const Complex> b) {
  return FFMEAN_DISPATCH(dot_reversed, a, b);
}

#undef FFMEAN_DISPATCH

#if !defined(FFMEAN_HAVE_AVX2)
namespace avx2 {
void eval_poly_circle(std::span<const Complex>, double, std::span<const double>, std::span<Complex>,
                      std::span<Complex>) {
  throw std::logic_error("built without AVX2 kernels");
}
void abs_cos_sums(std::size_t, std::span<const double>, std::span<double>) {
  throw std::logic_error("built without AVX2 kernels");
}
Complex dot_reversed(std::span<const Complex>, std::span<const Complex>) {
  throw std::logic_error("built without AVX2 kernels");
}
}  // namespace avx2
#endif

}  // namespace ffmean::simd
