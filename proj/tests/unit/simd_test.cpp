#include "ffmean/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ffmean::simd;

namespace {

std::vector<Complex> random_coeffs(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Complex> c(n);
  for (auto& x : c) x = Complex(U(g), U(g));
  return c;
}

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2 not available";
  }
};

}  // namespace

TEST(Dispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::scalar));
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
}

TEST(Dispatch, ForceRoundTrip) {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  if (isa_available(Isa::avx2)) {
    force_isa(Isa::avx2);
    EXPECT_EQ(active_isa(), Isa::avx2);
  } else {
    EXPECT_THROW(force_isa(Isa::avx2), std::invalid_argument);
  }
  force_isa(before);
}

TEST(ScalarKernels, EvalPolyCircleMatchesDirectSum) {
  std::mt19937_64 g(1);
  const auto c = random_coeffs(g, 37);
  std::vector<double> ph{0.0, 0.125, 0.3, 0.77};
  std::vector<Complex> v(ph.size()), d(ph.size());
  scalar::eval_poly_circle(c, 0.9, ph, v, d);
  for (std::size_t i = 0; i < ph.size(); ++i) {
    Complex sv{}, sd{};
    const Complex w = 0.9 * std::polar(1.0, 2 * std::numbers::pi * ph[i]);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Complex t = c[k] * std::pow(w, static_cast<double>(k));
      sv += t;
      sd += static_cast<double>(k) * t;
    }
    EXPECT_NEAR(std::abs(v[i] - sv), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(d[i] - sd), 0.0, 1e-11);
  }
}

TEST(ScalarKernels, AbsCosSums) {
  std::vector<double> a{0.0, 0.5, 0.2};
  std::vector<double> out(3);
  scalar::abs_cos_sums(3, a, out);
  EXPECT_NEAR(out[0], 1.5, 1e-15);
  EXPECT_NEAR(out[1], 0.5, 1e-15);
  const std::size_t n = 2000;
  scalar::abs_cos_sums(n, std::vector<double>{0.2}, out);
  double ref = 0;
  for (std::size_t k = 1; k < n; ++k) ref += std::abs(std::cos(std::numbers::pi * k * 0.2)) / k;
  EXPECT_NEAR(out[0], ref, 1e-12);
}

TEST(ScalarKernels, DotReversed) {
  std::vector<Complex> a{{1, 1}, {2, 0}, {0, 3}}, b{{1, 0}, {0, 1}, {2, 2}};
  const Complex expect = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
  EXPECT_NEAR(std::abs(scalar::dot_reversed(a, b) - expect), 0.0, 1e-15);
}

TEST_F(Avx2Equivalence, EvalPolyCircle) {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 64u, 513u}) {
    const auto c = random_coeffs(g, n);
    for (std::size_t m : {1u, 3u, 4u, 7u, 130u}) {
      std::vector<double> ph(m);
      for (auto& p : ph) p = U(g);
      std::vector<Complex> v1(m), d1(m), v2(m), d2(m);
      scalar::eval_poly_circle(c, 0.97, ph, v1, d1);
      avx2::eval_poly_circle(c, 0.97, ph, v2, d2);
      for (std::size_t i = 0; i < m; ++i) {
        EXPECT_LE(std::abs(v1[i] - v2[i]), 1e-12 * (1 + std::abs(v1[i])) * std::sqrt(n));
        EXPECT_LE(std::abs(d1[i] - d2[i]), 1e-12 * (1 + std::abs(d1[i])) * n);
      }
    }
  }
}

TEST_F(Avx2Equivalence, AbsCosSums) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (std::size_t n : {2u, 3u, 100u, 4097u}) {
    for (std::size_t m : {1u, 4u, 5u, 33u}) {
      std::vector<double> a(m), o1(m), o2(m);
      for (auto& x : a) x = U(g);
      scalar::abs_cos_sums(n, a, o1);
      avx2::abs_cos_sums(n, a, o2);
      for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(o1[i], o2[i], 1e-12 * (1 + o1[i]));
    }
  }
}

TEST_F(Avx2Equivalence, DotReversed) {
  std::mt19937_64 g(4);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 17u, 1000u}) {
    const auto a = random_coeffs(g, n), b = random_coeffs(g, n);
    const Complex s1 = scalar::dot_reversed(a, b), s2 = avx2::dot_reversed(a, b);
    EXPECT_LE(std::abs(s1 - s2), 1e-13 * (1.0 + n));
  }
}
