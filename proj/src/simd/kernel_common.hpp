#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>

namespace ffmean::simd::detail {

// The |cos| recurrence rotates by e(alpha/2) each step; every this many steps
// both variants recompute the rotation point directly so the drift stays at a
// few ulps regardless of n.
inline constexpr std::size_t kReseedInterval = 256;

// (cos, sin) of 2 pi phi, reduced mod 1 first.
inline std::pair<double, double> circle_point(double phi) {
  const double t = phi - std::floor(phi);
  const double ang = 2.0 * std::numbers::pi * t;
  return {std::cos(ang), std::sin(ang)};
}

// (cos, sin) of pi k alpha, reduced mod 2 first.
inline std::pair<double, double> half_turn_point(double alpha, std::size_t k) {
  double t = std::fmod(static_cast<double>(k) * alpha, 2.0);
  if (t < 0) t += 2.0;
  const double ang = std::numbers::pi * t;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace ffmean::simd::detail
