#include "ffmean/halasz_bounds.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ffmean/quadrature.hpp"
#include "ffmean/simd/kernels.hpp"

namespace ffmean {

namespace {

constexpr double kPi = std::numbers::pi;

void require_chi(const ChiSeq& chi, std::size_t n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  if (n - 1 > chi.size()) throw std::invalid_argument(std::string(who) + ": need chi(k) for k < n");
}

// (1 - t^{n-1}) / (1 - t) with t = (1 - u)^2, finite at u = 0.
double geometric_factor(std::size_t n, double u) {
  if (u <= 0.0) return static_cast<double>(n - 1);
  if (u >= 1.0) return n >= 2 ? 1.0 : 0.0;
  const double a = 2.0 * std::log1p(-u);
  return std::expm1(static_cast<double>(n - 1) * a) / std::expm1(a);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CertifiedMax certified_circle_max(const ChiSeq& chi, std::size_t n, double r, double rel_tol) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("certified_circle_max: r must lie in (0, 1]");
  require_chi(chi, n, "certified_circle_max");
  const auto c = exponent_coefficients(chi, n, r);
  CircleMaxOptions opts;
  opts.rel_tol = rel_tol;
  opts.polish = false;
  const LogMax lm = certified_log_max(c, 0, opts);
  CertifiedMax out;
  out.r = r;
  out.value = std::exp(lm.log_upper);
  out.lower_witness = std::exp(lm.log_lower);
  out.witness_phase = lm.witness;
  out.grid_points = lm.evaluations;
  out.certification_gap = out.value - out.lower_witness;
  return out;
}

double halasz_integral(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts) {
  if (n < 2) throw std::invalid_argument("halasz_integral: n must be >= 2");
  require_chi(chi, n, "halasz_integral");
  auto integrand = [&](double u) {
    const double r = 1.0 - u;
    const double mx = r > 0.0 ? certified_circle_max(chi, n, r, opts.max_rel_tol).value : 1.0;
    return mx * geometric_factor(n, u) * 2.0 * r;
  };
  std::vector<double> breaks{0.5 / static_cast<double>(n)};
  if (kappa > 0.0) {
    const double M = std::max(0.0, compute_M(chi, n, kappa));
    breaks.push_back(std::exp(M / kappa) * 0.5 / static_cast<double>(n));
  }
  const QuadResult q = integrate_gk15(integrand, 0.0, 1.0, breaks, opts.rel_tol);
  return q.value + q.abs_error;
}

double halasz_integral_rhs(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts) {
  return kappa * kappa / static_cast<double>(n) * halasz_integral(chi, n, kappa, opts);
}

double compute_M(const ChiSeq& chi, std::size_t n, double kappa) {
  const CertifiedMax m = certified_circle_max(chi, n, 1.0);
  return kappa * std::log(2.0 * static_cast<double>(n)) - std::log(m.value);
}

double corollary_rhs(double kappa, double M, std::size_t n) {
  if (M < 0.0) throw std::invalid_argument("corollary_rhs: M must be >= 0");
  if (n < 1) throw std::invalid_argument("corollary_rhs: n must be >= 1");
  return 2.0 * kappa * (kappa + 1.0 + M) * std::exp(-M) * std::pow(2.0 * static_cast<double>(n), kappa - 1.0);
}

HalaszReport verify_halasz(const ChiSeq& chi, std::size_t n, double kappa, const HalaszIntegralOptions& opts) {
  if (n < 2) throw std::invalid_argument("verify_halasz: n must be >= 2");
  if (n > chi.size()) throw std::invalid_argument("verify_halasz: need chi(k) for k <= n");
  if (chi.max_abs() > kappa * (1.0 + kKappaTolerance) + kKappaTolerance)
    throw std::invalid_argument("verify_halasz: chi exceeds kappa");
  HalaszReport rep;
  rep.n = n;
  rep.kappa = kappa;
  const SigmaSeq s = sigma_from_chi(chi, n);
  const SigmaSeq sp = sigma_from_chi(truncate_perp(chi, n), n);
  rep.lhs_full = std::abs(s[n]);
  rep.lhs_perp = std::abs(sp[n]);

  const CertifiedMax top = certified_circle_max(chi, n, 1.0);
  rep.M = kappa * std::log(2.0 * static_cast<double>(n)) - std::log(top.value);
  rep.cert_gap = top.certification_gap / top.value;
  rep.integral_rhs = halasz_integral_rhs(chi, n, kappa, opts);
  rep.corollary_rhs = corollary_rhs(kappa, std::max(0.0, rep.M), n);

  const double kn = kappa / static_cast<double>(n);
  rep.slack_theorem = std::min(rep.integral_rhs - rep.lhs_perp, rep.integral_rhs + kn - rep.lhs_full);
  rep.slack_corollary = rep.corollary_rhs - rep.lhs_full;
  rep.perp_relation_ok = rep.lhs_full <= rep.lhs_perp + kn + 1e-12;
  return rep;
}

std::string halasz_csv_header() {
  return "n,kappa,lhs_perp,lhs_full,integral_rhs,M,corollary_rhs,slack_theorem,slack_corollary,cert_gap";
}

std::string halasz_csv_row(const HalaszReport& r) {
  return std::to_string(r.n) + "," + fmt(r.kappa) + "," + fmt(r.lhs_perp) + "," + fmt(r.lhs_full) + "," +
         fmt(r.integral_rhs) + "," + fmt(r.M) + "," + fmt(r.corollary_rhs) + "," + fmt(r.slack_theorem) + "," +
         fmt(r.slack_corollary) + "," + fmt(r.cert_gap);
}

double parseval_mean_square(const ChiSeq& chi, std::size_t n, double R, std::size_t points) {
  require_chi(chi, n, "parseval_mean_square");
  std::vector<Complex> c(n);
  double Rj = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    Rj *= R;
    c[j] = chi[j] * Rj;
  }
  std::vector<double> phases(points);
  for (std::size_t i = 0; i < points; ++i) phases[i] = static_cast<double>(i) / static_cast<double>(points);
  std::vector<Complex> val(points), der(points);
  simd::eval_poly_circle(c, 1.0, phases, val, der);
  double acc = 0;
  for (const auto& v : val) acc += std::norm(v);
  return acc / static_cast<double>(points);
}

double parseval_sum(const ChiSeq& chi, std::size_t n, double R) {
  require_chi(chi, n, "parseval_sum");
  double acc = 0, R2j = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    R2j *= R * R;
    acc += std::norm(chi[j]) * R2j;
  }
  return acc;
}

Complex lemma1_double_integral(const ChiSeq& chi, std::size_t n, double rho) {
  require_chi(chi, n, "lemma1_double_integral");
  // The inner coefficient is a polynomial in t of degree < n, so n
  // Gauss-Legendre nodes integrate it exactly.
  const GaussRule gl = gauss_legendre01(std::max<std::size_t>(n, 2));
  const std::size_t pts = 4 * n + 64;
  std::vector<Complex> w(pts), wn(pts), Pw(pts);
  for (std::size_t m = 0; m < pts; ++m) {
    const Complex e = unit_exp(static_cast<double>(m) / static_cast<double>(pts));
    w[m] = rho * e;
    wn[m] = std::pow(rho, -static_cast<double>(n)) * unit_exp(-static_cast<double>(n * m) / static_cast<double>(pts));
    Complex p{};
    for (std::size_t j = n - 1; j >= 1; --j) p = (p + chi[j]) * w[m];
    Pw[m] = p;
  }
  Complex total{};
  for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
    const double t = gl.nodes[g];
    Complex inner{};
    for (std::size_t m = 0; m < pts; ++m) {
      const Complex tw = t * w[m];
      Complex q{};  // P(t w) / t
      for (std::size_t j = n - 1; j >= 1; --j) q = q * tw + chi[j] * w[m];
      // q above is sum chi(j) w (t w)^{j-1}, i.e. P(t w)/t.
      inner += Pw[m] * q * eval_G(chi, n, tw) * wn[m];
    }
    total += gl.weights[g] * inner / static_cast<double>(pts);
  }
  return total;
}

}  // namespace ffmean
