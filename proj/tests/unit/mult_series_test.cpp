#include "ffmean/mult_series.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ffmean/chi_spec.hpp"

using namespace ffmean;

namespace {

ChiSeq constant(Complex a, std::size_t N) { return ChiSeq(std::vector<Complex>(N, a), std::abs(a)); }

ExactChiSeq constant_exact(long a, std::size_t N) {
  return ExactChiSeq(std::vector<Rational>(N, Rational(a)), Rational(std::abs(a)));
}

// Formal exp by summing powers S^m / m!, sharing nothing with the recurrence.
std::vector<Complex> exp_by_powers(const std::vector<Complex>& S, std::size_t N) {
  std::vector<Complex> out(N + 1), term(N + 1);
  out[0] = term[0] = 1.0;
  for (std::size_t m = 1; m <= N; ++m) {
    std::vector<Complex> next(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 1; i + j <= N; ++j) next[i + j] += term[i] * S[j];
    for (auto& x : next) x /= static_cast<double>(m);
    term = next;
    for (std::size_t i = 0; i <= N; ++i) out[i] += term[i];
  }
  return out;
}

}  // namespace

TEST(SigmaFromChi, ConstantOne) {
  const auto s = sigma_from_chi(constant(1.0, 20), 20);
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_NEAR(std::abs(s[n] - 1.0), 0.0, 1e-14);
}

TEST(SigmaFromChi, MobiusExact) {
  const auto s = sigma_from_chi(constant_exact(-1, 10), 10);
  EXPECT_EQ(s[0], 1);
  EXPECT_EQ(s[1], -1);
  for (std::size_t n = 2; n <= 10; ++n) EXPECT_EQ(s[n], 0);
}

TEST(SigmaFromChi, DivisorExact) {
  const auto s = sigma_from_chi(constant_exact(2, 12), 12);
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(s[n], static_cast<long>(n + 1));
}

TEST(SigmaFromChi, NeedsEnoughChi) {
  EXPECT_THROW(sigma_from_chi(constant(1.0, 3), 5), std::invalid_argument);
}

TEST(ChiSeq, KappaBound) {
  EXPECT_THROW(ChiSeq({Complex(1.5)}, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(ChiSeq({Complex(1.0 + 1e-13)}, 1.0));
  EXPECT_THROW(ExactChiSeq({Rational(3, 2)}, Rational(1)), std::invalid_argument);
}

TEST(ChiFromSigma, Examples) {
  auto c = chi_from_sigma(SigmaSeq{std::vector<Complex>(8, 1.0)});
  for (std::size_t k = 1; k < 8; ++k) EXPECT_NEAR(std::abs(c[k] - 1.0), 0.0, 1e-13);
  ExactSigmaSeq mob{{1, -1, 0, 0, 0}};
  auto ce = chi_from_sigma(mob);
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(ce[k], -1);
  ExactSigmaSeq id{{1, 0, 0, 0}};
  auto ci = chi_from_sigma(id);
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(ci[k], 0);
}

TEST(ChiFromSigma, ExactRoundTrip) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> v(15);
    for (auto& x : v) {
      x = Rational(static_cast<long>(g() % 21) - 10, static_cast<long>(g() % 9) + 1);
      x.canonicalize();
    }
    const ExactChiSeq chi(v, Rational(10));
    const auto back = chi_from_sigma(sigma_from_chi(chi, 15));
    for (std::size_t k = 1; k <= 15; ++k) EXPECT_EQ(back[k], chi[k]);
  }
}

TEST(TruncatePerp, Examples) {
  const auto t = truncate_perp(constant(1.0, 6), 3);
  EXPECT_EQ(t[1], Complex(1.0));
  EXPECT_EQ(t[2], Complex(1.0));
  for (std::size_t k = 3; k <= 6; ++k) EXPECT_EQ(t[k], Complex(0.0));

  const auto se = sigma_from_chi(truncate_perp(constant_exact(1, 3), 3), 3);
  EXPECT_EQ(se[3], Rational(2, 3));

  const auto z = sigma_from_chi(truncate_perp(constant(0.7, 5), 1), 5);
  EXPECT_EQ(z[0], Complex(1.0));
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(z[n], Complex(0.0));
}

TEST(TruncatePerp, DiffersByChiOverNExactly) {
  std::mt19937_64 g(11);
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<Rational> v(n);
    for (auto& x : v) {
      x = Rational(static_cast<long>(g() % 7) - 3, static_cast<long>(g() % 4) + 1);
      x.canonicalize();
    }
    const ExactChiSeq chi(v, Rational(3));
    const auto s = sigma_from_chi(chi, n);
    const auto sp = sigma_from_chi(truncate_perp(chi, n), n);
    for (std::size_t m = 0; m < n; ++m) EXPECT_EQ(sp[m], s[m]);
    Rational expect = s[n] - chi[n] / Rational(static_cast<long>(n));
    expect.canonicalize();
    EXPECT_EQ(sp[n], expect);
  }
}

TEST(Twist, Examples) {
  const auto c = constant(1.0, 10);
  const auto same = twist(c, 0.0);
  for (std::size_t k = 1; k <= 10; ++k) EXPECT_EQ(same[k], c[k]);

  const auto alt = twist(c, 0.5);
  const auto s = sigma_from_chi(alt, 10);
  for (std::size_t k = 1; k <= 10; ++k) EXPECT_NEAR(std::abs(alt[k] - Complex(k % 2 ? -1.0 : 1.0)), 0.0, 1e-15);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_NEAR(std::abs(s[n] - Complex(n % 2 ? -1.0 : 1.0)), 0.0, 1e-13);

  const auto r = realize(ChiSpec::random(3, 1.5), 40);
  const auto back = twist(twist(r, 0.3141), -0.3141);
  for (std::size_t k = 1; k <= 40; ++k) EXPECT_NEAR(std::abs(back[k] - r[k]), 0.0, 1e-15 * 4);
}

TEST(Twist, Covariance) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const auto chi = realize(ChiSpec::random(100 + t, 1.0 + t % 3 * 0.5), 64);
    const double theta = U(g);
    const auto s = sigma_from_chi(chi, 64);
    const auto st = sigma_from_chi(twist(chi, theta), 64);
    for (std::size_t n = 0; n <= 64; ++n) {
      const Complex expect = s[n] * unit_exp(-static_cast<double>(n) * theta);
      EXPECT_LE(std::abs(st[n] - expect), 1e-12 * std::max(1.0, std::abs(expect)));
    }
    const auto s2 = twist(s, theta);
    for (std::size_t n = 0; n <= 64; ++n) EXPECT_LE(std::abs(s2[n] - st[n]), 1e-12 * std::max(1.0, std::abs(st[n])));
  }
}

TEST(EvalG, Examples) {
  const auto c = constant(1.0, 400);
  EXPECT_EQ(eval_G(c, 10, 0.0), Complex(1.0));
  const Complex w(0.3, 0.2);
  EXPECT_NEAR(std::abs(eval_G(c, 401, w) - 1.0 / (1.0 - w)), 0.0, 1e-12);
}

TEST(EvalG, TaylorCoefficientsMatchTruncatedRecurrence) {
  const auto chi = realize(ChiSpec::random(9, 1.0), 20);
  const std::size_t n = 12, pts = 256;
  const double rho = 0.7;
  const auto sp = sigma_from_chi(truncate_perp(chi, n), 20);
  for (std::size_t m = 0; m <= 20; ++m) {
    Complex acc{};
    for (std::size_t j = 0; j < pts; ++j) {
      const double t = static_cast<double>(j) / pts;
      acc += eval_G(chi, n, rho * unit_exp(t)) * unit_exp(-static_cast<double>(m) * t);
    }
    acc /= static_cast<double>(pts) * std::pow(rho, static_cast<double>(m));
    EXPECT_NEAR(std::abs(acc - sp[m]), 0.0, 1e-12) << m;
  }
}

TEST(ExpEquivalence, RecurrenceMatchesFormalExp) {
  std::mt19937_64 g(2024);
  for (int t = 0; t < 50; ++t) {
    const double kappa = 0.25 + 1.75 * static_cast<double>(g() % 1000) / 999.0;
    const std::size_t N = 1 + g() % 128;
    const auto chi = realize(ChiSpec::random(1000 + t, kappa), N);
    std::vector<Complex> S(N + 1);
    for (std::size_t k = 1; k <= N; ++k) S[k] = chi[k] / static_cast<double>(k);
    const auto ref = exp_by_powers(S, N);
    const auto s = sigma_from_chi(chi, N);
    for (std::size_t n = 0; n <= N; ++n)
      EXPECT_LE(std::abs(s[n] - ref[n]), 1e-10 * std::max(1.0, std::abs(ref[n]))) << t << " " << n;
  }
}

TEST(TrivialBound, Examples) {
  for (std::size_t n : {0u, 1u, 7u, 100u}) EXPECT_DOUBLE_EQ(trivial_bound(1.0, n), 1.0);
  EXPECT_DOUBLE_EQ(trivial_bound(2.0, 3), 4.0);
  EXPECT_DOUBLE_EQ(trivial_bound(0.5, 2), 0.375);
}

TEST(TrivialBound, DominatesSigma) {
  for (int t = 0; t < 30; ++t) {
    const double kappa = 0.5 * (1 + t % 4);
    const auto chi = realize(ChiSpec::random(500 + t, kappa), 100);
    const auto s = sigma_from_chi(chi, 100);
    for (std::size_t n = 0; n <= 100; ++n) EXPECT_LE(std::abs(s[n]), trivial_bound(kappa, n) * (1 + 1e-9));
  }
}

TEST(UnitExp, Values) {
  EXPECT_NEAR(std::abs(unit_exp(0.25) - Complex(0, 1)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(unit_exp(1e6 + 0.5) - Complex(-1, 0)), 0.0, 1e-9);
}
