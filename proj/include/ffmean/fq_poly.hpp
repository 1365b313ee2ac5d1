#pragma once

// Monic polynomials over a prime field F_q: enumeration, trial-division
// irreducibility and factorization. Everything here is exact residue
// arithmetic; nothing touches floating point.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffmean/rational.hpp"

namespace ffmean::fq {

using Coeff = std::uint32_t;

/// Size of a prime field. Construction rejects non-primes and q > 2^16
/// (products of two residues must fit comfortably in 64 bits).
class FieldSize {
 public:
  explicit FieldSize(std::uint32_t q);

  std::uint32_t value() const noexcept { return q_; }
  friend bool operator==(FieldSize, FieldSize) = default;

 private:
  std::uint32_t q_;
};

class MonicPoly {
 public:
  /// Coefficients lowest degree first; the last one must be 1.
  MonicPoly(FieldSize q, std::vector<Coeff> coeffs);

  static MonicPoly one(FieldSize q) { return MonicPoly(q, {1}); }
  /// x + c
  static MonicPoly linear(FieldSize q, Coeff c) { return MonicPoly(q, {c, 1}); }

  FieldSize field() const noexcept { return q_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Coeff> coeffs() const noexcept { return coeffs_; }

  /// Serialized as the lowest-first coefficient list, e.g. "[1,1,0,1]".
  std::string to_string() const;

  friend bool operator==(const MonicPoly& a, const MonicPoly& b) {
    return a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
  }
  /// Lexicographic on the lowest-first coefficient vector (degree is not
  /// consulted first; see factor_less for the factor ordering).
  friend bool operator<(const MonicPoly& a, const MonicPoly& b) { return a.coeffs_ < b.coeffs_; }

 private:
  FieldSize q_;
  std::vector<Coeff> coeffs_;
};

MonicPoly operator*(const MonicPoly& a, const MonicPoly& b);
MonicPoly pow(const MonicPoly& p, int k);

/// Quotient and remainder of a by a monic divisor. The remainder is returned
/// as a raw coefficient vector (trimmed of leading zeros; empty means 0).
struct DivResult {
  MonicPoly quotient;
  std::vector<Coeff> remainder;
};
DivResult divmod(const MonicPoly& a, const MonicPoly& divisor);
bool divides(const MonicPoly& divisor, const MonicPoly& a);

/// Multiset of (irreducible, multiplicity), sorted by (degree, coefficients).
struct Factorization {
  std::vector<std::pair<MonicPoly, int>> factors;

  MonicPoly expand(FieldSize q) const;
  bool is_prime_power() const noexcept { return factors.size() == 1; }
};

/// Ordering used for factor lists: degree first, then coefficients.
bool factor_less(const MonicPoly& a, const MonicPoly& b);

/// Index <-> polynomial bijection for M_n: index digits base q, c_0 most
/// significant, which realises the lexicographic order of coefficient vectors.
MonicPoly monic_from_index(FieldSize q, int n, std::uint64_t index);
std::uint64_t monic_count(FieldSize q, int n);

/// Calls visit(F) for every F in M_n, in lexicographic order.
void enumerate_monic(FieldSize q, int n, const std::function<void(const MonicPoly&)>& visit);
/// Materialized form of enumerate_monic, for small n.
std::vector<MonicPoly> list_monic(FieldSize q, int n);

/// Irreducibles over one field, grown lazily degree by degree. Degree-d
/// irreducibles are the monic degree-d polynomials with no factor among the
/// cached irreducibles of degree <= d/2.
class IrreducibleCache {
 public:
  explicit IrreducibleCache(FieldSize q) : q_(q) {}

  FieldSize field() const noexcept { return q_; }
  const std::vector<MonicPoly>& of_degree(int d);

  bool is_irreducible(const MonicPoly& f);
  Factorization factor(const MonicPoly& f);

 private:
  void ensure(int d);

  FieldSize q_;
  std::vector<std::vector<MonicPoly>> by_degree_{{}};  // index 0 unused
};

/// Convenience wrappers using a per-thread cache for q.
bool is_irreducible(const MonicPoly& f);
Factorization factor(const MonicPoly& f);

/// Lambda(F): deg P when F = P^k, else 0. Requires deg F >= 1.
int big_lambda(const MonicPoly& f);

/// (1/n) sum_{d | n} mu(d) q^{n/d}, exact.
BigInt count_irreducibles_formula(FieldSize q, int n);

int mobius(int n);

}  // namespace ffmean::fq
