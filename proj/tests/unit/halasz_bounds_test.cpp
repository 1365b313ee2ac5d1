#include "ffmean/halasz_bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ffmean/chi_spec.hpp"
#include "ffmean/quadrature.hpp"

using namespace ffmean;

namespace {

ChiSeq constant(double a, std::size_t N, double kappa) { return ChiSeq(std::vector<Complex>(N, a), kappa); }

double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
  return h;
}

}  // namespace

TEST(CircleMax, ZeroChi) {
  const auto z = constant(0.0, 10, 1.0);
  for (double r : {0.1, 0.5, 1.0}) EXPECT_NEAR(certified_circle_max(z, 10, r).value, 1.0, 1e-9);
}

TEST(CircleMax, SingleTermIsE) {
  const auto m = certified_circle_max(constant(1.0, 4, 1.0), 2, 1.0);
  EXPECT_GE(m.value, std::exp(1.0));
  EXPECT_LE(m.value, std::exp(1.0) * (1 + 1e-6));
  EXPECT_LE(m.lower_witness, m.value);
  EXPECT_GE(m.certification_gap, 0.0);
}

TEST(CircleMax, RejectsBadRadius) {
  const auto z = constant(0.0, 4, 1.0);
  EXPECT_THROW(certified_circle_max(z, 3, 0.0), std::invalid_argument);
  EXPECT_THROW(certified_circle_max(z, 3, 1.5), std::invalid_argument);
}

TEST(CircleMax, MonotoneInRadius) {
  for (int s = 0; s < 5; ++s) {
    const auto chi = realize(ChiSpec::random(70 + s, 1.0), 64);
    double prev = 0;
    for (double r = 0.1; r <= 1.0; r += 0.1) {
      const double v = certified_circle_max(chi, 64, r).value;
      EXPECT_GE(v * (1 + 1e-6), prev);
      prev = v;
    }
  }
}

TEST(HalaszIntegral, ZeroChiIsHarmonic) {
  const auto z = constant(0.0, 40, 1.0);
  EXPECT_NEAR(halasz_integral_rhs(z, 2, 1.0), 0.5, 1e-6);
  for (std::size_t n : {3u, 10u, 40u}) {
    const double expect = harmonic(n - 1) / static_cast<double>(n);
    const double got = halasz_integral_rhs(z, n, 1.0);
    EXPECT_GE(got, expect * (1 - 1e-12));
    EXPECT_LE(got, expect * (1 + 1e-4));
  }
  EXPECT_THROW(halasz_integral_rhs(z, 1, 1.0), std::invalid_argument);
}

TEST(HalaszIntegral, TwistInvariant) {
  const auto chi = realize(ChiSpec::random(5, 1.0), 32);
  const double a = halasz_integral_rhs(chi, 32, 1.0);
  const double b = halasz_integral_rhs(twist(chi, 0.3719), 32, 1.0);
  EXPECT_NEAR(a, b, 1e-6 * a);
}

TEST(HalaszIntegral, NeverBelowDenserSampledIntegral) {
  for (int s = 0; s < 4; ++s) {
    const std::size_t n = 16 << s;
    const auto chi = realize(ChiSpec::random(300 + s, 1.0 + 0.5 * s), n);
    const double kappa = chi.kappa();
    auto sampled = [&](double u) {
      const double r = 1.0 - u;
      if (r <= 0) return 1.0 * 0.0;
      const auto c = exponent_coefficients(chi, n, r);
      const double mx = std::exp(sampled_log_max(c, 0, 4 * 8 * n).log_lower);
      const double a = 2.0 * std::log1p(-u);
      const double geo = u == 0 ? static_cast<double>(n - 1) : std::expm1((n - 1) * a) / std::expm1(a);
      return mx * geo * 2.0 * r;
    };
    const auto q = integrate_gk15(sampled, 0.0, 1.0, {0.5 / n}, 1e-8);
    const double dense = kappa * kappa / n * q.value;
    EXPECT_GE(halasz_integral_rhs(chi, n, kappa), dense * (1 - 1e-7)) << n;
  }
}

TEST(ComputeM, Examples) {
  const auto z = constant(0.0, 10, 1.0);
  EXPECT_NEAR(compute_M(z, 10, 1.0), std::log(20.0), 1e-6);
  EXPECT_NEAR(compute_M(constant(1.0, 4, 1.0), 2, 1.0), std::log(4.0) - 1.0, 1e-6);
  const std::size_t n = 4096;
  const double M = compute_M(constant(1.0, n, 1.0), n, 1.0);
  EXPECT_NEAR(M, std::log(2.0 * n) - harmonic(n - 1), 1e-6);
  EXPECT_NEAR(M, std::log(2.0) - std::numbers::egamma, 2e-4);
}

TEST(ClosedFormBound, Examples) {
  EXPECT_DOUBLE_EQ(corollary_rhs(1.0, 0.0, 1), 4.0);
  EXPECT_DOUBLE_EQ(corollary_rhs(1.0, 0.0, 777), 4.0);
  EXPECT_NEAR(corollary_rhs(2.0, 1.0, 2), 64.0 / std::exp(1.0), 1e-12);
  EXPECT_THROW(corollary_rhs(1.0, -0.1, 2), std::invalid_argument);
}

TEST(VerifyHalasz, MobiusAndOne) {
  for (std::size_t n : {2u, 10u, 64u}) {
    const auto rep = verify_halasz(constant(-1.0, n, 1.0), n, 1.0);
    EXPECT_NEAR(rep.lhs_full, 0.0, 1e-14);
    EXPECT_GT(rep.slack_theorem, 0.0);
    EXPECT_GT(rep.slack_corollary, 0.0);
    EXPECT_TRUE(rep.passes());
  }
  const auto one = verify_halasz(constant(1.0, 200, 1.0), 200, 1.0);
  EXPECT_NEAR(one.lhs_full, 1.0, 1e-12);
  EXPECT_NEAR(one.corollary_rhs, 2.0 * (2.0 + one.M) * std::exp(-one.M), 1e-12);
  EXPECT_TRUE(one.passes());
}

TEST(VerifyHalasz, RandomSuiteSample) {
  const double kappas[] = {0.5, 1.0, 2.0};
  for (int s = 0; s < 12; ++s) {
    const double kappa = kappas[s % 3];
    const std::size_t n = 4u << (s % 5);
    const auto chi = realize(ChiSpec::random(s, kappa), n);
    const auto rep = verify_halasz(chi, n, kappa);
    EXPECT_TRUE(rep.passes()) << halasz_csv_row(rep);
  }
}

TEST(VerifyHalasz, CsvShape) {
  EXPECT_EQ(halasz_csv_header(),
            "n,kappa,lhs_perp,lhs_full,integral_rhs,M,corollary_rhs,slack_theorem,slack_corollary,cert_gap");
  const auto rep = verify_halasz(constant(1.0, 8, 1.0), 8, 1.0);
  const auto row = halasz_csv_row(rep);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
}

TEST(Parseval, MeanSquareMatchesSum) {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int s = 0; s < 10; ++s) {
    const std::size_t n = 8 + 50 * s;
    const auto chi = realize(ChiSpec::random(40 + s, 2.0), n);
    const double R = U(g);
    const double a = parseval_mean_square(chi, n, R), b = parseval_sum(chi, n, R);
    EXPECT_NEAR(a, b, 1e-10 * b);
  }
}

TEST(CauchyDecomposition, DoubleIntegralIsNSigmaPerp) {
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto chi = realize(ChiSpec::random(800 + n, 1.0), n);
    const auto sp = sigma_from_chi(truncate_perp(chi, n), n);
    const Complex expect = static_cast<double>(n) * sp[n];
    const Complex got = lemma1_double_integral(chi, n);
    EXPECT_LE(std::abs(got - expect), 1e-6 * std::max(std::abs(expect), 1e-3)) << n;
  }
}
