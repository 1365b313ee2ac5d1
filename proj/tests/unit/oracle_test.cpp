#include "ffmean/oracle.hpp"

#include <gtest/gtest.h>

#include "ffmean/worked_examples.hpp"
#include "json.hpp"

using namespace ffmean;
using namespace ffmean::oracle;

TEST(LocalLambda, Examples) {
  // Mobius: f(P) = -1, f(P^j) = 0 beyond.
  auto L = local_lambda(std::vector<Rational>{-1, 0, 0, 0}, 3);
  for (const auto& x : L) EXPECT_EQ(x, -3);
  // f = 1: von Mangoldt.
  L = local_lambda(std::vector<Rational>{1, 1, 1}, 2);
  for (const auto& x : L) EXPECT_EQ(x, 2);
  // Completely multiplicative f(P^j) = a^j.
  const Rational a(2, 3);
  std::vector<Rational> f{a, a * a, a * a * a};
  L = local_lambda(f, 5);
  EXPECT_EQ(L[0], 5 * a);
  EXPECT_EQ(L[1], Rational(5 * 4, 9));
  EXPECT_EQ(L[2], Rational(5 * 8, 27));
}

TEST(LocalLambda, ExpInverts) {
  std::vector<Rational> lam{Rational(1, 2), Rational(-3), Rational(7, 4), Rational(0), Rational(2)};
  const auto f = local_exp(lam, 2);
  EXPECT_EQ(local_lambda(f, 2), lam);
  std::vector<Complex> lc{{0.3, 0.1}, {-1, 0.5}, {0.2, 0.2}};
  const auto back = local_lambda(local_exp(lc, 3), 3);
  for (std::size_t i = 0; i < lc.size(); ++i) EXPECT_NEAR(std::abs(back[i] - lc[i]), 0.0, 1e-14);
}

TEST(OracleChi, Examples) {
  const auto one = ChiSpec::constant(Rational(1));
  for (std::uint32_t q : {2u, 3u})
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(oracle_chi_exact(one, q, k), 1);
  EXPECT_EQ(oracle_chi_exact(ChiSpec::constant(Rational(-1)), 2, 2), -1);
  EXPECT_EQ(oracle_chi_exact(ChiSpec::smooth(1), 2, 2), Rational(1, 2));
}

TEST(OracleSigma, Examples) {
  EXPECT_EQ(oracle_sigma_exact(ChiSpec::constant(Rational(1)), 2, 3), 1);
  EXPECT_EQ(oracle_sigma_exact(ChiSpec::constant(Rational(-1)), 2, 2), 0);
  EXPECT_EQ(oracle_sigma_exact(ChiSpec::constant(Rational(2)), 2, 2), 3);
  EXPECT_EQ(oracle_sigma_exact(ChiSpec::constant(Rational(1)), 5, 0), 1);
}

TEST(OracleSigma, BridgeValuesForDivisorFunction) {
  // exp(2 sum y^k / k) = (1 - y)^-2, so f(P^j) = j + 1.
  const auto v = prime_power_values(ChiSpec::constant(Rational(2)), 3, 6);
  for (int d = 1; d <= 6; ++d)
    for (int j = 0; j <= 6 / d; ++j) EXPECT_EQ(v.f_exact[d][j], j + 1);
}

TEST(OracleSigma, TwistRotatesByDegree) {
  const auto spec = ChiSpec::constant(Complex(0.3, 0.4));
  for (int n = 1; n <= 5; ++n) {
    const Complex a = oracle_sigma(spec, 3, n, 0.0), b = oracle_sigma(spec, 3, n, 0.2);
    EXPECT_NEAR(std::abs(b - a * unit_exp(-0.2 * n)), 0.0, 1e-13);
    const Complex ca = oracle_chi(spec, 3, n, 0.0), cb = oracle_chi(spec, 3, n, 0.2);
    EXPECT_NEAR(std::abs(cb - ca * unit_exp(-0.2 * n)), 0.0, 1e-13);
  }
}

TEST(ConsistentChi, SmoothUsesPrimeCounts) {
  const auto c = consistent_chi_exact(ChiSpec::smooth(2), 2, 4);
  EXPECT_EQ(c[1], 1);
  EXPECT_EQ(c[2], Rational(1 * 2 + 2 * 1) / 4);
  EXPECT_EQ(c[3], Rational(2) / 8);
  EXPECT_EQ(c[4], Rational(2 + 2) / 16);
}

TEST(FactorHistogram, CountsAndLambdaSum) {
  const auto& h = factor_histogram(2, 4);
  std::uint64_t total = 0;
  for (const auto& [t, c] : h.counts) total += c;
  EXPECT_EQ(total, 16u);
  EXPECT_EQ(h.irreducible_count(), 3u);
  EXPECT_EQ(h.lambda_sum(), 16);
  EXPECT_THROW(factor_histogram(7, 9), std::length_error);
}

TEST(Certify, StockSpecsPass) {
  for (const auto& spec : stock_specs("all"))
    for (std::uint32_t q : {2u, 3u}) {
      const auto rep = oracle_certify(spec, q, q == 2 ? 8 : 6);
      EXPECT_TRUE(rep.all_pass) << rep.to_json();
      EXPECT_TRUE(rep.exact);
    }
}

TEST(Certify, FloatSpecPasses) {
  const auto rep = oracle_certify(ChiSpec::random(4, 1.0), 3, 5);
  EXPECT_FALSE(rep.exact);
  EXPECT_TRUE(rep.all_pass) << rep.to_json();
}

TEST(Certify, KappaBelowValuesIsRejected) {
  auto spec = ChiSpec::constant(Rational(2));
  spec.kappa_override = 1.0;
  EXPECT_THROW(oracle_certify(spec, 2, 3), std::invalid_argument);
}

TEST(Certify, JsonShape) {
  const auto rep = oracle_certify(ChiSpec::smooth(2), 2, 4);
  const auto j = nlohmann::json::parse(rep.to_json());
  for (const char* key : {"spec", "q", "n_max", "all_pass", "mismatches"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["all_pass"].get<bool>());
}

TEST(Smooth, IndicatorCountDominatesSeriesModel) {
  for (std::uint32_t q : {2u, 3u})
    for (std::size_t m = 1; m <= 3; ++m) {
      const int nmax = q == 2 ? 10 : 7;
      const auto series = examples::smooth_sigma(m, static_cast<std::size_t>(nmax));
      for (int n = 0; n <= nmax; ++n) {
        const Rational N = oracle_sigma_exact(ChiSpec::smooth(static_cast<int>(m)), q, n);
        EXPECT_GE(N.get_d(), series[static_cast<std::size_t>(n)].real() - 1e-15) << q << " " << m << " " << n;
      }
    }
}
