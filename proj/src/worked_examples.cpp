#include "ffmean/worked_examples.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ffmean/chi_spec.hpp"

namespace ffmean::examples {

namespace {

constexpr double kPi = std::numbers::pi;

double dist_to_int(double t) { return std::abs(t - std::nearbyint(t)); }

}  // namespace

Complex binomial_sigma(Complex alpha, std::size_t n) {
  Complex p = 1.0;
  for (std::size_t j = 0; j < n; ++j) p *= (alpha + static_cast<double>(j)) / static_cast<double>(j + 1);
  return p;
}

Rational binomial_sigma(const Rational& alpha, std::size_t n) {
  Rational p = 1;
  for (std::size_t j = 0; j < n; ++j) {
    p *= (alpha + static_cast<long>(j)) / Rational(static_cast<long>(j + 1));
    p.canonicalize();
  }
  return p;
}

// ---- Dickman ----------------------------------------------------------------------

DickmanTable::DickmanTable(double h, double u_max) : h_(h), u_max_(u_max) {
  const double inv = 1.0 / h;
  if (!(h > 0) || std::abs(inv - std::round(inv)) > 1e-9 || inv < 8)
    throw std::invalid_argument("DickmanTable: 1/h must be an integer >= 8");
  if (!(u_max >= 2)) throw std::invalid_argument("DickmanTable: u_max must be >= 2");
  per_unit_ = static_cast<std::size_t>(std::llround(inv));
  const std::size_t N = per_unit_;
  const std::size_t last = static_cast<std::size_t>(std::ceil(u_max * static_cast<double>(N)));
  rho_.assign(last + 1, 1.0);
  auto u_of = [&](std::size_t i) { return static_cast<double>(i) / static_cast<double>(N); };
  for (std::size_t i = N + 1; i <= std::min(2 * N, last); ++i) rho_[i] = 1.0 - std::log(u_of(i));
  if (last <= 2 * N) return;
  for (std::size_t i = 2 * N + 1; i <= last; ++i) {
    // Summed afresh each step (smallest terms first): a running window would
    // carry absolute rounding error from where rho is O(1).
    double window = 0;
    for (std::size_t j = i - 1; j >= i - N + 1; --j) window += rho_[j];
    const double u = u_of(i);
    const double d_hi = -rho_[i - N] / u;
    const double d_lo = -rho_[i - 2 * N] / (u - 1.0);
    const double rhs = h * (0.5 * rho_[i - N] + window) - h * h / 12.0 * (d_hi - d_lo);
    rho_[i] = rhs / (u - 0.5 * h);
  }
}

double DickmanTable::operator()(double u) const {
  if (!(u >= 0.0)) throw std::invalid_argument("dickman_rho: u must be >= 0");
  if (u > u_max_) throw std::out_of_range("dickman_rho: u beyond the table");
  if (u <= 1.0) return 1.0;
  if (u <= 2.0) return 1.0 - std::log(u);
  const std::size_t N = per_unit_;
  std::size_t k = static_cast<std::size_t>(std::floor(u));
  if (static_cast<double>(k) == u) --k;  // integers belong to the interval below
  const std::size_t base = k * N;
  const double x = (u - static_cast<double>(k)) * static_cast<double>(N);
  const std::size_t j = static_cast<std::size_t>(std::floor(x));
  const std::size_t i0 = std::clamp<std::size_t>(j == 0 ? 0 : j - 1, 0, N - 3) + base;
  if (i0 + 3 >= rho_.size()) throw std::out_of_range("dickman_rho: u beyond the table");
  const double t = x - static_cast<double>(i0 - base);
  const double y0 = rho_[i0], y1 = rho_[i0 + 1], y2 = rho_[i0 + 2], y3 = rho_[i0 + 3];
  return y0 * (t - 1) * (t - 2) * (t - 3) / -6.0 + y1 * t * (t - 2) * (t - 3) / 2.0 +
         y2 * t * (t - 1) * (t - 3) / -2.0 + y3 * t * (t - 1) * (t - 2) / 6.0;
}

const DickmanTable& default_dickman() {
  static const DickmanTable table;
  return table;
}

double dickman_rho(double u) { return default_dickman()(u); }

double dickman_step_halving_error(const std::vector<double>& points, double h) {
  double umax = 2.0;
  for (double p : points) umax = std::max(umax, std::ceil(p));
  const DickmanTable coarse(h, umax), fine(h / 2.0, umax);
  double err = 0;
  for (double p : points) err = std::max(err, std::abs(coarse(p) - fine(p)));
  return err;
}

ChiSeq smooth_chi(std::size_t m, std::size_t N) {
  if (m < 1) throw std::invalid_argument("smooth: m must be >= 1");
  return realize(ChiSpec::smooth(static_cast<int>(m)), N);
}

SigmaSeq smooth_sigma(std::size_t m, std::size_t N) { return sigma_from_chi(smooth_chi(m, N), N); }

// ---- periodic ----------------------------------------------------------------------

ChiSeq periodic_chi(std::size_t m, std::size_t N) {
  if (m % 2 == 0) throw std::invalid_argument("periodic_chi: the sign pattern needs odd m");
  return realize(ChiSpec::sign_pattern(static_cast<int>(m)), N);
}

std::vector<Complex> hat_chi(const std::vector<Complex>& period) {
  const std::size_t m = period.size();
  if (m == 0) throw std::invalid_argument("hat_chi: empty period");
  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    Complex acc{};
    for (std::size_t k = 1; k <= m; ++k)
      acc += period[k - 1] * unit_exp(-static_cast<double>((j * k) % m) / static_cast<double>(m));
    out[j] = acc / static_cast<double>(m);
  }
  return out;
}

double m3_closed_form(std::size_t j) {
  const std::size_t n = j / 3;
  double p = 1.0;
  for (std::size_t i = 1; i <= n; ++i) p *= (static_cast<double>(i) - 1.0 / 3.0) / static_cast<double>(i);
  switch (j % 3) {
    case 0:
      return p;
    case 1:
      return -p;
    default:
      return 0.0;
  }
}

Rational m3_closed_form_exact(std::size_t j) {
  const std::size_t n = j / 3;
  Rational p = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    p *= Rational(3 * static_cast<long>(i) - 1, 3 * static_cast<long>(i));
    p.canonicalize();
  }
  switch (j % 3) {
    case 0:
      return p;
    case 1:
      return -p;
    default:
      return 0;
  }
}

// ---- point masses ------------------------------------------------------------------------

void validate(const PointMassConfig& c) {
  if (c.alphas.size() != c.weights.size() || c.alphas.empty())
    throw std::invalid_argument("PointMassConfig: need equally many (>= 1) points and weights");
  for (std::size_t i = 0; i < c.alphas.size(); ++i) {
    if (std::abs(c.weights[i]) > 1.0 + 1e-12) throw std::invalid_argument("PointMassConfig: |a_j| must be <= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (dist_to_int(c.alphas[i] - c.alphas[j]) < 1e-12)
        throw std::invalid_argument("PointMassConfig: coincident points");
  }
}

ChiSeq point_mass_chi(const PointMassConfig& c, std::size_t N) {
  validate(c);
  double kappa = 0;
  for (auto a : c.weights) kappa += std::abs(a);
  std::vector<Complex> v(N);
  for (std::size_t k = 1; k <= N; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < c.alphas.size(); ++j)
      acc += c.weights[j] * unit_exp(-static_cast<double>(k) * c.alphas[j]);
    v[k - 1] = acc;
  }
  return ChiSeq(std::move(v), kappa);
}

Complex rgamma(Complex z) {
  if (z.real() < 0.5) {
    // 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
    return std::sin(kPi * z) / (kPi * rgamma(1.0 - z));
  }
  static constexpr double g = 7.0;
  static constexpr double p[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                  771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                  -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  Complex x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const Complex t = z + g + 0.5;
  const Complex log_gamma = 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
  return std::exp(-log_gamma);
}

Complex example9_main_term(const PointMassConfig& c, std::size_t n) {
  validate(c);
  if (n < 1) throw std::invalid_argument("example9_main_term: n must be >= 1");
  const double logn = std::log(static_cast<double>(n));
  Complex total{};
  for (std::size_t j = 0; j < c.alphas.size(); ++j) {
    Complex logC0{};
    for (std::size_t l = 0; l < c.alphas.size(); ++l) {
      if (l == j) continue;
      // Re(1 - e(x)) >= 0, so the principal log is continuous here.
      logC0 -= c.weights[l] * std::log(1.0 - unit_exp(c.alphas[j] - c.alphas[l]));
    }
    const Complex a = c.weights[j];
    total += std::exp(logC0 + (a - 1.0) * logn) * unit_exp(-static_cast<double>(n) * c.alphas[j]) * rgamma(a);
  }
  return total;
}

PointMassConfig random_point_mass(std::uint64_t seed, std::size_t k) {
  if (k < 1) throw std::invalid_argument("random_point_mass: k must be >= 1");
  std::mt19937_64 gen(seed);
  PointMassConfig c;
  // Points are kept at least 1/(4k) apart so the constants stay moderate.
  const double sep = 0.25 / static_cast<double>(k);
  while (c.alphas.size() < k) {
    const double a = unit_from_bits(gen());
    bool ok = true;
    for (double b : c.alphas) ok = ok && dist_to_int(a - b) >= sep;
    if (ok) c.alphas.push_back(a);
  }
  for (std::size_t j = 0; j < k; ++j) {
    const double u1 = unit_from_bits(gen());
    const double u2 = unit_from_bits(gen());
    c.weights.push_back(std::sqrt(u1) * unit_exp(u2));
  }
  return c;
}

PointMassConfig m3_point_mass() {
  // chi(k) = sum_r hat chi(r) e(k r / 3): points alpha = -r/3 mod 1.
  return {{0.0, 2.0 / 3.0, 1.0 / 3.0}, {Complex(-1.0 / 3.0), Complex(2.0 / 3.0), Complex(2.0 / 3.0)}};
}

// ---- roots ------------------------------------------------------------------------------------

RootRecovery remark7_roots(const SigmaSeq& sigma, double q, double zero_tol) {
  if (sigma.size() == 0 || std::abs(sigma[0] - Complex(1.0)) > 1e-12)
    throw std::invalid_argument("remark7_roots: sigma(0) must be 1");
  if (!(q >= 1.0)) throw std::invalid_argument("remark7_roots: q must be >= 1");
  std::size_t k = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (std::abs(sigma[i]) > zero_tol) k = i;
  if (k + 1 >= sigma.size())
    throw std::invalid_argument("remark7_roots: sigma does not terminate within the given range");
  RootRecovery out;
  out.k = k;
  if (k == 0) return out;

  // beta_j are the roots of x^k + sigma(1) x^{k-1} + ... + sigma(k).
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) C(0, static_cast<Eigen::Index>(i)) = -sigma[i + 1];
  for (std::size_t i = 1; i < k; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("remark7_roots: eigenvalue solver failed");
  std::vector<Complex> beta(k);
  for (std::size_t i = 0; i < k; ++i) beta[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));

  // A root of multiplicity p comes back as a cluster of radius ~eps^{1/p};
  // the cluster mean is accurate to ~eps, so clusters are replaced by it.
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> group{i};
    const double tol = 1e-5 * std::max(1.0, std::abs(beta[i]));
    for (std::size_t j = i + 1; j < k; ++j)
      if (!used[j] && std::abs(beta[j] - beta[i]) < tol) group.push_back(j);
    if (group.size() > 1) {
      Complex mean{};
      for (auto g : group) mean += beta[g];
      mean /= static_cast<double>(group.size());
      for (auto g : group) {
        beta[g] = mean;
        used[g] = true;
      }
    }
  }

  for (const Complex b : beta) {
    Complex p = 1.0;
    double scale = 1.0, bp = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
      p = p * b + sigma[i];
      bp *= std::max(1.0, std::abs(b));
      scale += std::abs(sigma[i]);
    }
    out.max_residual = std::max(out.max_residual, std::abs(p) / (scale * bp));
    out.alphas.push_back(q * b);
  }
  for (const Complex a : out.alphas)
    if (std::abs(a) > q * (1.0 + 1e-9))
      throw std::domain_error("remark7_roots: root outside |alpha| <= q (sigma not from a bounded chi?)");
  return out;
}

Complex chi_from_roots(const RootRecovery& r, double q, std::size_t ell) {
  Complex s{};
  for (const Complex a : r.alphas) s += std::pow(a / q, static_cast<double>(ell));
  return -s;
}

std::size_t roots_on_circle(const RootRecovery& r, double q, double tol) {
  std::size_t c = 0;
  for (const Complex a : r.alphas)
    if (std::abs(std::abs(a) - q) <= tol * q) ++c;
  return c;
}

SigmaSeq sigma_from_roots(const std::vector<Complex>& alphas, double q) {
  std::vector<Complex> coef{1.0};
  for (const Complex a : alphas) {
    const Complex b = a / q;
    coef.push_back(0.0);
    for (std::size_t i = coef.size() - 1; i >= 1; --i) coef[i] -= b * coef[i - 1];
  }
  return SigmaSeq{std::move(coef)};
}

}  // namespace ffmean::examples
