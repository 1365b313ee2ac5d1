#pragma once

// Brute-force ground truth: enumerate and factor M_n over a small prime field,
// then average f and Lambda_f directly.
//
// Bridge from a ChiSpec to f: Lambda_f(P^k) = deg(P) * chi(k deg P), so f on the
// powers of a degree-d prime is read off exp(sum_k chi(kd) y^k / k). The smooth
// kind instead uses the indicator f(P^j) = 1 iff deg P <= m, whose own chi is
// q^-k sum_{d | k, d <= m} d pi_q(d).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffmean/chi_spec.hpp"
#include "ffmean/fq_poly.hpp"
#include "ffmean/mult_series.hpp"

namespace ffmean::oracle {

/// Largest q^n the enumeration accepts.
inline constexpr double kMaxEnumeration = 1e7;

// ---- local factors ----------------------------------------------------------

/// Lambda_f(P^1..P^K) from f(P^1..P^K) for a prime of degree d:
/// c_k = k a_k - sum_{j<k} c_j a_{k-j}, Lambda_f(P^k) = d c_k.
std::vector<Rational> local_lambda(const std::vector<Rational>& f_powers, int d);
std::vector<Complex> local_lambda(const std::vector<Complex>& f_powers, int d);

/// Inverse: f(P^1..P^K) from Lambda_f(P^1..P^K), a_k = (1/k) sum c_i a_{k-i}.
std::vector<Rational> local_exp(const std::vector<Rational>& lambda, int d);
std::vector<Complex> local_exp(const std::vector<Complex>& lambda, int d);

// ---- factor types -------------------------------------------------------------

/// Sorted (degree, multiplicity) pairs of a factorization.
using FactorType = std::vector<std::pair<int, int>>;

/// Counts of factor types over M_n, computed once per (q, n) and cached.
struct FactorHistogram {
  std::uint32_t q = 0;
  int n = 0;
  std::map<FactorType, std::uint64_t> counts;

  std::uint64_t irreducible_count() const;
  /// sum over F in M_n of Lambda(F).
  BigInt lambda_sum() const;
};

/// Throws std::length_error with the size estimate when q^n > kMaxEnumeration.
void check_feasible(std::uint32_t q, int n);

const FactorHistogram& factor_histogram(std::uint32_t q, int n);

// ---- prime-power values ----------------------------------------------------------

/// f(P^j) for each prime degree d <= n_max and 1 <= j <= n_max/d.
struct PrimePowerValues {
  std::uint32_t q = 0;
  int n_max = 0;
  bool exact = false;
  std::vector<std::vector<Rational>> f_exact;  ///< [d][j], j = 0 holds 1
  std::vector<std::vector<Complex>> f;         ///< [d][j]
  std::vector<std::vector<Rational>> lambda_exact;  ///< [d][k], Lambda_f(P^k)
  std::vector<std::vector<Complex>> lambda;
};

/// Exact when the spec is rational, otherwise floating point only.
PrimePowerValues prime_power_values(const ChiSpec& spec, std::uint32_t q, int n_max);

// ---- averages --------------------------------------------------------------------

/// chi(k) = q^-k sum_{F in M_k} Lambda_f(F).
Rational oracle_chi_exact(const ChiSpec& spec, std::uint32_t q, int k);
/// As above in floating point; theta twists f by e(-theta deg).
Complex oracle_chi(const ChiSpec& spec, std::uint32_t q, int k, double theta = 0.0);

/// sigma(n) = q^-n sum_{F in M_n} f(F).
Rational oracle_sigma_exact(const ChiSpec& spec, std::uint32_t q, int n);
Complex oracle_sigma(const ChiSpec& spec, std::uint32_t q, int n, double theta = 0.0);

/// The chi(1..N) the oracle's f is built to have (without enumerating).
ExactChiSeq consistent_chi_exact(const ChiSpec& spec, std::uint32_t q, std::size_t N);
ChiSeq consistent_chi(const ChiSpec& spec, std::uint32_t q, std::size_t N);

// ---- certification --------------------------------------------------------------------

struct Mismatch {
  std::string what;  ///< "chi", "sigma", "lambda_bound", "irreducible_count", "lambda_sum"
  std::uint32_t q = 0;
  int degree = 0;
  std::string expected, got;
};

struct OracleReport {
  std::string spec;  ///< JSON of the spec
  std::uint32_t q = 0;
  int n_max = 0;
  bool exact = false;
  bool all_pass = true;
  std::vector<Mismatch> mismatches;

  std::string to_json() const;
};

/// Compares oracle chi and sigma with the series engine for degrees 1..n_max
/// (exactly for rational specs, to 1e-12 otherwise), checks |Lambda_f(P^k)| <=
/// kappa deg P, and cross-checks irreducible counts and sum Lambda = q^n.
OracleReport oracle_certify(const ChiSpec& spec, std::uint32_t q, int n_max);

}  // namespace ffmean::oracle
