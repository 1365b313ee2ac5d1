#pragma once

// Declarative description of a multiplicative function, shared by the CLI,
// the series engine and the oracle.
//
// JSON forms:
//   {"kind": "constant", "alpha": [re, im]}      (or a bare number / "p/q")
//   {"kind": "periodic", "values": [...]}       chi(k) = values[(k-1) mod m]
//   {"kind": "smooth",   "m": int}              chi(l) = 1 for l <= m, else 0
//   {"kind": "explicit", "values": [[re,im],...]}
//   {"kind": "random",   "seed": int, "kappa": real}
// plus an optional "kappa" override and an optional "name".
//
// Random draws: std::mt19937_64 seeded with `seed`; for k = 1, 2, ... two
// consecutive outputs x1, x2 give u_i = (x_i >> 11) * 2^-53 and
// chi(k) = kappa * sqrt(u1) * e(u2). Uniform on the disc of radius kappa,
// and a longer draw extends a shorter one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffmean/mult_series.hpp"

namespace ffmean {

enum class ChiKind { constant, periodic, smooth, explicit_values, random };

/// A value that may be exact: real rationals keep their exact form so the
/// exact mode can use them; anything else is complex floating point.
struct SpecValue {
  Complex value;
  std::optional<Rational> exact;

  static SpecValue from_rational(const Rational& r) { return {Complex(r.get_d(), 0.0), r}; }
  static SpecValue from_complex(Complex z);
};

struct ChiSpec {
  ChiKind kind = ChiKind::constant;
  std::string name;
  SpecValue alpha{Complex(1.0, 0.0), Rational(1)};
  std::vector<SpecValue> values;
  int m = 1;
  std::uint64_t seed = 0;
  double random_kappa = 1.0;
  std::optional<double> kappa_override;

  /// Declared bound: the override if present, else the natural one.
  double kappa() const;
  /// True when every chi(k) is a real rational (exact mode is available).
  bool is_rational() const;

  static ChiSpec constant(const Rational& a, std::string name = {});
  static ChiSpec constant(Complex a, std::string name = {});
  static ChiSpec periodic(std::vector<SpecValue> values, std::string name = {});
  /// chi(k) = sign(cos(2 pi k / m)) repeating, for odd m.
  static ChiSpec sign_pattern(int m);
  static ChiSpec smooth(int m);
  static ChiSpec explicit_values(std::vector<Complex> values, std::string name = {});
  static ChiSpec random(std::uint64_t seed, double kappa);
};

/// chi(1..N) in floating point.
ChiSeq realize(const ChiSpec& spec, std::size_t N);
/// chi(1..N) exactly; throws for non-rational specs.
ExactChiSeq realize_exact(const ChiSpec& spec, std::size_t N);

/// Parse one spec from JSON text.
ChiSpec parse_spec_json(const std::string& json_text);
/// Serialize (used in report headers and config hashes).
std::string spec_to_json(const ChiSpec& spec);

/// Stock names: one, mobius, divisor2, periodic3 (any odd periodicM),
/// smooth1..smoothM, and "all" for the certification set.
std::vector<ChiSpec> stock_specs(const std::string& name);

/// "stock:NAME" or a path to a JSON file (a single object or an array).
std::vector<ChiSpec> load_specs(const std::string& arg);

/// The uniform double used by the random kind: (x >> 11) * 2^-53.
double unit_from_bits(std::uint64_t x);

}  // namespace ffmean
