#include "ffmean/certified_max.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ffmean/simd/kernels.hpp"

namespace ffmean {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap01(double x) { return x - std::floor(x); }

struct Batch {
  std::vector<Complex> value, wderiv;
};

void evaluate(std::span<const Complex> coeffs, std::span<const double> phases, Batch& out) {
  out.value.resize(phases.size());
  out.wderiv.resize(phases.size());
  simd::eval_poly_circle(coeffs, 1.0, phases, out.value, out.wderiv);
}

double log_prefactor(std::size_t ell, double phi) {
  if (ell == 0) return 0.0;
  const double s = std::abs(std::sin(kPi * std::fmod(static_cast<double>(ell) * wrap01(phi), 2.0)));
  return s > 0 ? std::log(2.0 * s) : kNegInf;
}

double log_prefactor_bound(std::size_t ell, double phi, double d) {
  if (ell == 0) return 0.0;
  const double t = kPi * std::fmod(static_cast<double>(ell) * wrap01(phi), 2.0);
  const double l = static_cast<double>(ell);
  const double a = 2.0 * std::abs(std::sin(t)) + 2.0 * kPi * l * std::abs(std::cos(t)) * d + kPi * kPi * l * l * d * d;
  return std::log(std::min(2.0, a));
}

}  // namespace

TrigJet trig_jet(std::span<const Complex> coeffs, double phi) {
  const double p = wrap01(phi);
  double h = 0, s1 = 0, s2 = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Complex t = coeffs[k] * unit_exp(static_cast<double>(k) * p);
    const double kk = static_cast<double>(k);
    h += t.real();
    s1 += kk * t.imag();
    s2 += kk * kk * t.real();
  }
  return {h, -2.0 * kPi * s1, -4.0 * kPi * kPi * s2};
}

LogMax certified_log_max(std::span<const Complex> coeffs, std::size_t prefactor_ell, const CircleMaxOptions& opts) {
  if (!(opts.rel_tol > 0)) throw std::invalid_argument("certified_log_max: rel_tol must be positive");
  const std::size_t K = coeffs.size();
  double D2 = 0, abs_sum = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double a = std::abs(coeffs[k]);
    D2 += static_cast<double>(k) * static_cast<double>(k) * a;
    abs_sum += a;
  }
  D2 *= 4.0 * kPi * kPi;
  // Horner rounding in h, bounded generously.
  const double slack = 8.0 * static_cast<double>(K + 1) * std::numeric_limits<double>::epsilon() * (abs_sum + 1.0);
  const double log_tol = std::log1p(0.5 * opts.rel_tol);
  if (slack > 0.25 * log_tol) throw std::invalid_argument("certified_log_max: tolerance below rounding level");

  std::size_t n0 = opts.initial_cells ? opts.initial_cells : std::max<std::size_t>(8 * K, 64);
  if (prefactor_ell > 0) n0 = std::max(n0, 8 * prefactor_ell);
  std::vector<double> centers(n0);
  for (std::size_t i = 0; i < n0; ++i) centers[i] = static_cast<double>(i) / static_cast<double>(n0);
  double d = 0.5 / static_cast<double>(n0);

  LogMax out;
  out.initial_cells = n0;
  double lower = kNegInf, witness = 0, pruned = kNegInf;
  Batch batch;
  std::vector<double> ub, next;
  while (!centers.empty()) {
    out.evaluations += centers.size();
    if (out.evaluations > opts.max_evaluations)
      throw std::runtime_error("certified_log_max: evaluation budget exhausted");
    evaluate(coeffs, centers, batch);
    ub.resize(centers.size());
    const double second = 0.5 * D2 * d * d + slack;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double h = batch.value[i].real();
      const double dh = -2.0 * kPi * batch.wderiv[i].imag();
      const double f = h + log_prefactor(prefactor_ell, centers[i]);
      if (f > lower) {
        lower = f;
        witness = centers[i];
      }
      ub[i] = h + std::abs(dh) * d + second + log_prefactor_bound(prefactor_ell, centers[i], d);
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

  if (prefactor_ell == 0 && opts.polish) {
    const double step_cap = 0.5 / static_cast<double>(n0);
    double phi = witness;
    for (int it = 0; it < 8; ++it) {
      const TrigJet j = trig_jet(coeffs, phi);
      if (!(j.d2h < 0)) break;
      double step = -j.dh / j.d2h;
      if (std::abs(step) > step_cap) break;
      const double cand = phi + step;
      const double fc = trig_jet(coeffs, cand).h;
      if (!(fc > lower)) break;
      lower = fc;
      witness = cand;
      phi = cand;
      if (std::abs(step) < 1e-15) break;
    }
  }

  out.log_lower = lower;
  out.log_upper = std::max(pruned, lower);
  out.witness = wrap01(witness);
  return out;
}

LogMax sampled_log_max(std::span<const Complex> coeffs, std::size_t prefactor_ell, std::size_t grid_points) {
  if (grid_points == 0) throw std::invalid_argument("sampled_log_max: grid_points must be positive");
  std::vector<double> phases(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) phases[i] = static_cast<double>(i) / static_cast<double>(grid_points);
  Batch batch;
  evaluate(coeffs, phases, batch);
  LogMax out;
  out.log_lower = kNegInf;
  out.evaluations = grid_points;
  out.initial_cells = grid_points;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double f = batch.value[i].real() + log_prefactor(prefactor_ell, phases[i]);
    if (f > out.log_lower) {
      out.log_lower = f;
      out.witness = phases[i];
    }
  }
  out.log_upper = out.log_lower;
  return out;
}

}  // namespace ffmean
