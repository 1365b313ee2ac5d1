#include "ffmean/fq_poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ffmean::fq {

namespace {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void trim(std::vector<Coeff>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

FieldSize::FieldSize(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("field size must be prime, got " + std::to_string(q));
  if (q > (1u << 16)) throw std::invalid_argument("field size too large for the oracle layer");
}

MonicPoly::MonicPoly(FieldSize q, std::vector<Coeff> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.back() != 1)
    throw std::invalid_argument("monic polynomial needs leading coefficient 1");
  for (Coeff c : coeffs_)
    if (c >= q_.value()) throw std::invalid_argument("coefficient out of range for F_q");
}

std::string MonicPoly::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coeffs_[i]);
  }
  return s + "]";
}

MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  const std::uint64_t q = a.field().value();
  std::vector<std::uint64_t> acc(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      acc[i + j] = (acc[i + j] + std::uint64_t{a.coeffs()[i]} * b.coeffs()[j]) % q;
  }
  return MonicPoly(a.field(), std::vector<Coeff>(acc.begin(), acc.end()));
}

MonicPoly pow(const MonicPoly& p, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  MonicPoly r = MonicPoly::one(p.field());
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

DivResult divmod(const MonicPoly& a, const MonicPoly& divisor) {
  if (!(a.field() == divisor.field())) throw std::invalid_argument("field mismatch");
  const std::uint64_t q = a.field().value();
  const int da = a.degree();
  const int dd = divisor.degree();
  if (da < dd) {
    std::vector<Coeff> rem(a.coeffs().begin(), a.coeffs().end());
    return {MonicPoly::one(a.field()), rem};  // quotient 1 is never used when da < dd
  }
  std::vector<std::uint64_t> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Coeff> quot(static_cast<std::size_t>(da - dd + 1), 0);
  auto d = divisor.coeffs();
  for (int i = da - dd; i >= 0; --i) {
    const std::uint64_t lead = r[static_cast<std::size_t>(i + dd)];
    quot[static_cast<std::size_t>(i)] = static_cast<Coeff>(lead);
    if (lead == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      auto& slot = r[static_cast<std::size_t>(i + j)];
      slot = (slot + (q - lead) * d[static_cast<std::size_t>(j)]) % q;
    }
  }
  std::vector<Coeff> rem(r.begin(), r.begin() + dd);
  trim(rem);
  return {MonicPoly(a.field(), std::move(quot)), std::move(rem)};
}

bool divides(const MonicPoly& divisor, const MonicPoly& a) {
  if (divisor.degree() > a.degree()) return false;
  return divmod(a, divisor).remainder.empty();
}

bool factor_less(const MonicPoly& a, const MonicPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a < b;
}

MonicPoly Factorization::expand(FieldSize q) const {
  MonicPoly r = MonicPoly::one(q);
  for (const auto& [p, k] : factors) r = r * pow(p, k);
  return r;
}

std::uint64_t monic_count(FieldSize q, int n) {
  if (n < 0) throw std::invalid_argument("negative degree");
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) {
    if (c > (std::uint64_t{1} << 40)) throw std::invalid_argument("enumeration size out of range");
    c *= q.value();
  }
  return c;
}

MonicPoly monic_from_index(FieldSize q, int n, std::uint64_t index) {
  std::vector<Coeff> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  for (int i = n - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<Coeff>(index % q.value());
    index /= q.value();
  }
  return MonicPoly(q, std::move(c));
}

void enumerate_monic(FieldSize q, int n, const std::function<void(const MonicPoly&)>& visit) {
  const std::uint64_t count = monic_count(q, n);
  for (std::uint64_t i = 0; i < count; ++i) visit(monic_from_index(q, n, i));
}

std::vector<MonicPoly> list_monic(FieldSize q, int n) {
  std::vector<MonicPoly> out;
  out.reserve(monic_count(q, n));
  enumerate_monic(q, n, [&](const MonicPoly& f) { out.push_back(f); });
  return out;
}

void IrreducibleCache::ensure(int d) {
  while (static_cast<int>(by_degree_.size()) <= d) {
    const int deg = static_cast<int>(by_degree_.size());
    std::vector<MonicPoly> found;
    enumerate_monic(q_, deg, [&](const MonicPoly& f) {
      for (int e = 1; 2 * e <= deg; ++e)
        for (const auto& p : by_degree_[static_cast<std::size_t>(e)])
          if (divides(p, f)) return;
      found.push_back(f);
    });
    by_degree_.push_back(std::move(found));
  }
}

const std::vector<MonicPoly>& IrreducibleCache::of_degree(int d) {
  if (d < 1) throw std::invalid_argument("irreducibles have degree >= 1");
  ensure(d);
  return by_degree_[static_cast<std::size_t>(d)];
}

bool IrreducibleCache::is_irreducible(const MonicPoly& f) {
  if (!(f.field() == q_)) throw std::invalid_argument("field mismatch");
  if (f.degree() < 1) throw std::invalid_argument("is_irreducible needs degree >= 1");
  ensure(f.degree() / 2);
  for (int e = 1; 2 * e <= f.degree(); ++e)
    for (const auto& p : by_degree_[static_cast<std::size_t>(e)])
      if (divides(p, f)) return false;
  return true;
}

Factorization IrreducibleCache::factor(const MonicPoly& f) {
  if (!(f.field() == q_)) throw std::invalid_argument("field mismatch");
  Factorization out;
  MonicPoly rest = f;
  for (int e = 1; 2 * e <= rest.degree(); ++e) {
    ensure(e);
    for (const auto& p : by_degree_[static_cast<std::size_t>(e)]) {
      int k = 0;
      while (rest.degree() >= e) {
        auto dr = divmod(rest, p);
        if (!dr.remainder.empty()) break;
        rest = std::move(dr.quotient);
        ++k;
      }
      if (k > 0) out.factors.emplace_back(p, k);
      if (2 * e > rest.degree()) break;
    }
  }
  if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return factor_less(a.first, b.first); });
  return out;
}

namespace {

IrreducibleCache& thread_cache(FieldSize q) {
  thread_local std::map<std::uint32_t, std::unique_ptr<IrreducibleCache>> caches;
  auto& slot = caches[q.value()];
  if (!slot) slot = std::make_unique<IrreducibleCache>(q);
  return *slot;
}

}  // namespace

bool is_irreducible(const MonicPoly& f) { return thread_cache(f.field()).is_irreducible(f); }

Factorization factor(const MonicPoly& f) { return thread_cache(f.field()).factor(f); }

int big_lambda(const MonicPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("big_lambda needs degree >= 1");
  const auto fac = factor(f);
  return fac.is_prime_power() ? fac.factors.front().first.degree() : 0;
}

int mobius(int n) {
  if (n < 1) throw std::invalid_argument("mobius needs n >= 1");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

BigInt count_irreducibles_formula(FieldSize q, int n) {
  if (n < 1) throw std::invalid_argument("count_irreducibles_formula needs n >= 1");
  BigInt total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    BigInt term;
    mpz_ui_pow_ui(term.get_mpz_t(), q.value(), static_cast<unsigned long>(n / d));
    total += mu * term;
  }
  if (total % n != 0) throw std::logic_error("necklace count not divisible by n");
  return total / n;
}

}  // namespace ffmean::fq
