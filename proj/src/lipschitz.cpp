#include "ffmean/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ffmean/certified_max.hpp"
#include "ffmean/simd/kernels.hpp"

namespace ffmean {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

double wrap01(double x) { return x - std::floor(x); }

// 2 |sin(pi l alpha)| with the argument reduced first.
double chord(std::size_t ell, double alpha) {
  const double t = std::fmod(static_cast<double>(ell) * wrap01(alpha), 2.0);
  return 2.0 * std::abs(std::sin(kPi * t));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LipschitzReport lipschitz_report(const ChiSeq& chi, std::size_t n, std::size_t ell, double allowance, double K) {
  if (n < 2) throw std::invalid_argument("lipschitz: n must be >= 2");
  if (ell < 1 || ell > n) throw std::invalid_argument("lipschitz: need 1 <= l <= n");
  if (chi.kappa() > 1.0 + kKappaTolerance) throw std::invalid_argument("lipschitz: requires kappa <= 1");
  if (n + ell > chi.size()) throw std::invalid_argument("lipschitz: need chi(k) for k <= n + l");

  LipschitzReport rep;
  rep.n = n;
  rep.ell = ell;
  rep.m0 = m0_of(ell);
  const ThetaStar ts = best_theta(chi, n);
  rep.theta_star = ts.theta;
  rep.L = L_value(chi, n, ell, ts.theta).value;

  const SigmaSeq s = sigma_from_chi(chi, n + ell);
  const Complex diff = s[n + ell] * unit_exp(-static_cast<double>(ell) * ts.theta) - s[n];
  const double nd = static_cast<double>(n);
  rep.thm2_lhs = std::abs(diff);
  rep.lhs = nd * rep.thm2_lhs;
  rep.modulus_lhs = std::abs(std::abs(s[n + ell]) - std::abs(s[n]));
  rep.prop1_rhs = prop1_rhs(n, ell, rep.L);
  rep.prop1_pass = rep.lhs <= rep.prop1_rhs + allowance;

  const double ld = static_cast<double>(ell);
  rep.thm2_term1 = std::pow(ld / nd, 1.0 - kTwoOverPi) * std::log(2.0 * nd / ld);
  rep.thm2_term2 = std::pow(std::log(nd), 2.0 - kTwoOverPi) / std::pow(nd, 1.0 - c_m_closed(rep.m0));
  const double bound = K * (rep.thm2_term1 + rep.thm2_term2);
  rep.thm2_pass = rep.thm2_lhs <= bound && rep.modulus_lhs <= bound;
  return rep;
}

}  // namespace

ThetaStar best_theta(const ChiSeq& chi, std::size_t n, double tol) {
  if (n < 2) throw std::invalid_argument("best_theta: n must be >= 2");
  const auto c = exponent_coefficients(chi, n, 1.0);
  CircleMaxOptions opts;
  opts.rel_tol = tol;
  opts.polish = true;
  const LogMax lm = certified_log_max(c, 0, opts);
  ThetaStar out;
  out.theta = wrap01(-lm.witness);
  out.value = lm.log_lower;
  out.upper = lm.log_upper;
  return out;
}

CertifiedMax L_value(const ChiSeq& chi, std::size_t n, std::size_t ell, double theta, double rel_tol) {
  if (n < 2) throw std::invalid_argument("L_value: n must be >= 2");
  if (ell < 1) throw std::invalid_argument("L_value: l must be >= 1");
  const auto c = exponent_coefficients(twist(chi, theta), n, 1.0);
  CircleMaxOptions opts;
  opts.rel_tol = rel_tol;
  opts.polish = false;
  const LogMax lm = certified_log_max(c, ell, opts);
  CertifiedMax out;
  out.r = 1.0;
  out.value = std::exp(lm.log_upper);
  out.lower_witness = std::exp(lm.log_lower);
  out.witness_phase = lm.witness;
  out.grid_points = lm.evaluations;
  out.certification_gap = out.value - out.lower_witness;
  return out;
}

double prop1_rhs(std::size_t n, std::size_t ell, double L) {
  const double logterm = L > 0.0 ? L * std::max(0.0, std::log(2.0 * static_cast<double>(n) / L)) : 0.0;
  return 5.0 * static_cast<double>(ell) + 3.0 * L + logterm + 2.0;
}

LipschitzReport prop1_verify(const ChiSeq& chi, std::size_t n, std::size_t ell, double allowance) {
  return lipschitz_report(chi, n, ell, allowance, 64.0);
}

LipschitzReport theorem2_verify(const ChiSeq& chi, std::size_t n, std::size_t ell, double K) {
  return lipschitz_report(chi, n, ell, 1e-6, K);
}

std::string lipschitz_csv_header() { return "n,ell,m0,theta_star,L,lhs,prop1_rhs,thm2_term1,thm2_term2,pass"; }

std::string lipschitz_csv_row(const LipschitzReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.ell) + "," + std::to_string(r.m0) + "," + fmt(r.theta_star) +
         "," + fmt(r.L) + "," + fmt(r.lhs) + "," + fmt(r.prop1_rhs) + "," + fmt(r.thm2_term1) + "," +
         fmt(r.thm2_term2) + "," + ((r.prop1_pass && r.thm2_pass) ? "1" : "0");
}

double c_m_sum(std::size_t m) {
  if (m < 1) throw std::invalid_argument("c_m: m must be >= 1");
  // Neumaier summation keeps m = 10^4 well inside 1e-13.
  double s = 0, comp = 0;
  for (std::size_t a = 0; a < m; ++a) {
    const double x = std::abs(std::cos(kPi * static_cast<double>(a) / static_cast<double>(m)));
    const double t = s + x;
    comp += std::abs(s) >= x ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return (s + comp) / static_cast<double>(m);
}

double c_m_closed(std::size_t m) {
  if (m < 1) throw std::invalid_argument("c_m: m must be >= 1");
  const double md = static_cast<double>(m);
  const double x = kPi / (2.0 * md);
  return m % 2 == 1 ? 1.0 / (md * std::sin(x)) : 1.0 / (md * std::tan(x));
}

double c_m_series(std::size_t m, double* tail_bound, std::size_t r_max) {
  if (m < 1) throw std::invalid_argument("c_m: m must be >= 1");
  const std::size_t S = std::max<std::size_t>(r_max / m, 1);
  const double md = static_cast<double>(m);
  const double four_m2 = 4.0 * md * md;
  auto term = [&](double s) { return 1.0 / (four_m2 * s * s - 1.0); };
  double sum = 0;
  for (std::size_t s = S; s >= 1; --s) {
    const bool negative = (m * s) % 2 == 1;
    sum += negative ? -term(static_cast<double>(s)) : term(static_cast<double>(s));
  }
  const double Sd = static_cast<double>(S);
  double tail, bound;
  if (m % 2 == 0) {
    // All remaining terms positive: sum_{s>S} 1/(4m^2 s^2 - 1).
    tail = (1.0 / Sd - 0.5 / (Sd * Sd) + 1.0 / (6.0 * Sd * Sd * Sd)) / four_m2;
    bound = 1.0 / (30.0 * std::pow(Sd, 5) * four_m2) + 1.0 / (3.0 * four_m2 * four_m2 * Sd * Sd * Sd);
  } else {
    // Alternating with sign (-1)^s: take half the first omitted term.
    const double a = term(Sd + 1.0);
    tail = ((S + 1) % 2 == 1 ? -0.5 : 0.5) * a;
    bound = a / Sd;
  }
  if (tail_bound) *tail_bound = 2.0 * kTwoOverPi * bound;
  return kTwoOverPi * (1.0 - 2.0 * (sum + tail));
}

double CmValue::max_disagreement() const {
  return std::max({std::abs(sum - closed), std::abs(sum - series), std::abs(closed - series)});
}

CmValue c_m(std::size_t m) { return {m, c_m_sum(m), c_m_closed(m), c_m_series(m)}; }

double abs_cos_fourier(double t, std::size_t R) {
  double s = kTwoOverPi;
  for (std::size_t r = 1; r <= R; ++r) {
    const double rd = static_cast<double>(r);
    const double sign = r % 2 == 0 ? 1.0 : -1.0;
    s -= sign / (2.0 * kPi * (rd * rd - 0.25)) * 2.0 * std::cos(2.0 * kPi * rd * wrap01(t));
  }
  return s;
}

double dist_to_int(double t) { return std::abs(t - std::nearbyint(t)); }

double L_star(std::size_t n, std::size_t ell, double alpha) {
  if (n < 2) throw std::invalid_argument("L_star: n must be >= 2");
  double s = 0;
  simd::abs_cos_sums(n, std::span<const double>(&alpha, 1), std::span<double>(&s, 1));
  return chord(ell, alpha) * std::exp(s);
}

std::pair<double, double> lemma2_sharpness(std::size_t n, double alpha) {
  if (n < 2) throw std::invalid_argument("lemma2_sharpness: n must be >= 2");
  const double theta = alpha / 2.0;
  std::vector<Complex> chi(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const double c = std::cos(kPi * static_cast<double>(k) * alpha);
    const double sign = c >= 0 ? 1.0 : -1.0;
    chi[k - 1] = unit_exp(static_cast<double>(k) * (theta - alpha / 2.0)) * sign;
  }
  const ChiSeq tw = twist(ChiSeq(std::move(chi), 1.0), theta);
  double lhs = 0, rhs = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    const double c = std::cos(kPi * jd * alpha);
    lhs += (tw[j] * unit_exp(jd * alpha / 2.0)).real() * c / jd;
    rhs += std::abs(c) / jd;
  }
  return {lhs, rhs};
}

double lemma2_lhs(const ChiSeq& chi, std::size_t n, std::size_t ell, double theta, double alpha) {
  if (n < 2 || n - 1 > chi.size()) throw std::invalid_argument("lemma2_lhs: need chi(k) for k < n");
  double e = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    e += (chi[j] * unit_exp(jd * (alpha - theta))).real() / jd;
  }
  return chord(ell, alpha) * std::exp(e);
}

RationalApprox rational_approx(double alpha, std::size_t n) {
  if (n < 3) throw std::invalid_argument("rational_approx: n must be >= 3");
  const long R = static_cast<long>(std::ceil(std::log(static_cast<double>(n))));
  for (long m = 1; m <= 2 * R; ++m) {
    const long b = std::lround(alpha * static_cast<double>(m));
    if (std::gcd(std::labs(b), m) != 1) continue;
    const double err = std::abs(alpha - static_cast<double>(b) / static_cast<double>(m));
    if (err <= 1.0 / (2.0 * static_cast<double>(m) * static_cast<double>(R)) * (1.0 + 1e-12))
      return {alpha, b, m, R};
  }
  throw std::logic_error("rational_approx: no qualifying m <= 2R (implementation bug)");
}

long least_abs_residue(long t, long m) {
  if (m < 1) throw std::invalid_argument("least_abs_residue: m must be >= 1");
  long r = t % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

double remark10_factor(long m, long b) {
  if (m < 1) throw std::invalid_argument("remark10_factor: m must be >= 1");
  const double lm = std::log(static_cast<double>(m));
  double s = 0;
  for (long r = 1; static_cast<double>(r) <= lm; ++r) {
    const long res = least_abs_residue(r * b, m);
    if (res == 0) throw std::invalid_argument("remark10_factor: r b divisible by m (gcd(b, m) != 1?)");
    const double rd = static_cast<double>(r);
    const double sign = r % 2 == 0 ? 1.0 : -1.0;
    s += sign / (4.0 * rd * rd - 1.0) * std::log(static_cast<double>(m) / std::abs(static_cast<double>(res)));
  }
  return std::exp(-2.0 * kTwoOverPi * s);
}

double lemma3_estimate(std::size_t n, std::size_t ell, double alpha) {
  const RationalApprox ra = rational_approx(alpha, n);
  const double nd = static_cast<double>(n);
  const double cm = c_m_closed(static_cast<std::size_t>(ra.m));
  const double x = dist_to_int(static_cast<double>(ra.m) * alpha);
  const double mn = x > 0 ? std::min(nd, 1.0 / x) : nd;
  return dist_to_int(static_cast<double>(ell) * alpha) * std::pow(nd, kTwoOverPi) * std::pow(mn, cm - kTwoOverPi) *
         remark10_factor(ra.m, ra.b);
}

std::size_t m0_of(std::size_t ell) {
  if (ell < 1) throw std::invalid_argument("m0_of: l must be >= 1");
  std::size_t m = 3;
  while (ell % m == 0) m += 2;
  return m;
}

LStarMax max_L_star(std::size_t n, std::size_t ell, double rel_tol) {
  if (n < 3) throw std::invalid_argument("max_L_star: n must be >= 3");
  if (ell < 1) throw std::invalid_argument("max_L_star: l must be >= 1");
  // L*(1 - alpha) = L*(alpha): search [0, 1/2].
  const std::size_t n0 = 64 * n / 2;
  const double lip = kPi * static_cast<double>(n - 1);
  double hmax = 0;
  for (std::size_t k = 1; k < n; ++k) hmax += 1.0 / static_cast<double>(k);
  const double log_tol = std::log1p(0.5 * rel_tol);
  const double ld = static_cast<double>(ell);

  std::vector<double> centers(n0 + 1), sums, next;
  for (std::size_t i = 0; i <= n0; ++i) centers[i] = 0.5 * static_cast<double>(i) / static_cast<double>(n0);
  double d = 0.25 / static_cast<double>(n0);
  double lower = -std::numeric_limits<double>::infinity(), witness = 0;
  double pruned = lower;
  LStarMax out;
  std::vector<double> ub;
  while (!centers.empty()) {
    out.evaluations += centers.size();
    if (out.evaluations > 500'000'000) throw std::runtime_error("max_L_star: evaluation budget exhausted");
    sums.resize(centers.size());
    simd::abs_cos_sums(n, centers, sums);
    ub.resize(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double a = chord(ell, centers[i]);
      const double f = a > 0 ? std::log(a) + sums[i] : -std::numeric_limits<double>::infinity();
      if (f > lower) {
        lower = f;
        witness = centers[i];
      }
      const double t = kPi * std::fmod(ld * wrap01(centers[i]), 2.0);
      const double abound =
          std::min(2.0, a + 2.0 * kPi * ld * std::abs(std::cos(t)) * d + kPi * kPi * ld * ld * d * d);
      ub[i] = std::log(abound) + std::min(hmax, sums[i] + lip * d) + 1e-12;
    }
    next.clear();
    const double cut = lower + log_tol;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (ub[i] <= cut) {
        pruned = std::max(pruned, ub[i]);
      } else {
        next.push_back(centers[i] - 0.5 * d);
        next.push_back(centers[i] + 0.5 * d);
      }
    }
    centers.swap(next);
    d *= 0.5;
  }
  out.value = std::exp(std::max(pruned, lower));
  out.lower = std::exp(lower);
  out.witness = wrap01(witness);
  return out;
}

}  // namespace ffmean
