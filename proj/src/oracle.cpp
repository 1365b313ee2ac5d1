#include "ffmean/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdio>
#include <mutex>
#include <stdexcept>

#include "ffmean/parallel.hpp"
#include "json.hpp"

namespace ffmean::oracle {

namespace {

template <class T>
std::vector<T> lambda_impl(const std::vector<T>& a, int d) {
  // a[0] is f(P^1); work with a_0 = 1 implicitly.
  const std::size_t K = a.size();
  auto A = [&](std::size_t j) -> T { return j == 0 ? T(1) : a[j - 1]; };
  std::vector<T> c(K + 1, T(0));
  for (std::size_t k = 1; k <= K; ++k) {
    T v = T(static_cast<long>(k)) * A(k);
    for (std::size_t j = 1; j < k; ++j) v -= c[j] * A(k - j);
    c[k] = v;
  }
  std::vector<T> out(K);
  for (std::size_t k = 1; k <= K; ++k) out[k - 1] = c[k] * T(d);
  return out;
}

template <class T>
std::vector<T> exp_impl(const std::vector<T>& lambda, int d) {
  const std::size_t K = lambda.size();
  std::vector<T> a(K + 1, T(0));
  a[0] = T(1);
  for (std::size_t k = 1; k <= K; ++k) {
    T v(0);
    for (std::size_t i = 1; i <= k; ++i) v += lambda[i - 1] * a[k - i];
    a[k] = v / (T(static_cast<long>(k)) * T(d));
  }
  return {a.begin() + 1, a.end()};
}

Rational canon(Rational r) {
  r.canonicalize();
  return r;
}

std::string str(const Rational& r) { return canon(r).get_str(); }

std::string str(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

Rational q_power(std::uint32_t q, int n) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), q, static_cast<unsigned long>(n));
  return Rational(p);
}

FactorType type_of(const fq::Factorization& f) {
  FactorType t;
  for (const auto& [p, e] : f.factors) t.emplace_back(p.degree(), e);
  std::sort(t.begin(), t.end());
  return t;
}

bool is_smooth(const ChiSpec& s) { return s.kind == ChiKind::smooth; }

}  // namespace

std::vector<Rational> local_lambda(const std::vector<Rational>& f_powers, int d) {
  auto out = lambda_impl(f_powers, d);
  for (auto& x : out) x.canonicalize();
  return out;
}
std::vector<Complex> local_lambda(const std::vector<Complex>& f_powers, int d) { return lambda_impl(f_powers, d); }

std::vector<Rational> local_exp(const std::vector<Rational>& lambda, int d) {
  auto out = exp_impl(lambda, d);
  for (auto& x : out) x.canonicalize();
  return out;
}
std::vector<Complex> local_exp(const std::vector<Complex>& lambda, int d) { return exp_impl(lambda, d); }

std::uint64_t FactorHistogram::irreducible_count() const {
  auto it = counts.find(FactorType{{n, 1}});
  return it == counts.end() ? 0 : it->second;
}

BigInt FactorHistogram::lambda_sum() const {
  BigInt s = 0;
  for (const auto& [t, c] : counts)
    if (t.size() == 1) s += BigInt(static_cast<unsigned long>(c)) * t[0].first;
  return s;
}

void check_feasible(std::uint32_t q, int n) {
  const double size = std::pow(static_cast<double>(q), n);
  if (n < 0 || size > kMaxEnumeration) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "oracle: q^n = %u^%d ~ %.3g polynomials exceeds the enumeration limit %.0g", q, n,
                  size, kMaxEnumeration);
    throw std::length_error(buf);
  }
}

const FactorHistogram& factor_histogram(std::uint32_t q, int n) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FactorHistogram>> cache;
  check_feasible(q, n);
  const fq::FieldSize field(q);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({q, n}); it != cache.end()) return *it->second;
  }
  auto h = std::make_unique<FactorHistogram>();
  h->q = q;
  h->n = n;
  if (n == 0) {
    h->counts[FactorType{}] = 1;
  } else {
    const std::uint64_t total = fq::monic_count(field, n);
    const std::size_t chunks = chunk_count(total, 4 * thread_count());
    std::vector<std::map<FactorType, std::uint64_t>> partial(chunks);
    parallel_for(total, chunks, [&](std::size_t b, std::size_t e, std::size_t c) {
      for (std::size_t i = b; i < e; ++i) ++partial[c][type_of(fq::factor(fq::monic_from_index(field, n, i)))];
    });
    for (const auto& p : partial)
      for (const auto& [t, cnt] : p) h->counts[t] += cnt;
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::pair{q, n}, std::move(h));
  return *it->second;
}

PrimePowerValues prime_power_values(const ChiSpec& spec, std::uint32_t q, int n_max) {
  if (n_max < 0) throw std::invalid_argument("prime_power_values: n_max must be >= 0");
  PrimePowerValues v;
  v.q = q;
  v.n_max = n_max;
  v.exact = spec.is_rational();
  const std::size_t N = static_cast<std::size_t>(std::max(n_max, 1));
  v.f.resize(N + 1);
  v.lambda.resize(N + 1);
  if (v.exact) {
    v.f_exact.resize(N + 1);
    v.lambda_exact.resize(N + 1);
  }
  const ChiSeq chi = realize(spec, N);
  std::optional<ExactChiSeq> chi_exact;
  if (v.exact && !is_smooth(spec)) chi_exact = realize_exact(spec, N);
  for (int d = 1; d <= n_max; ++d) {
    const int K = n_max / d;
    if (is_smooth(spec)) {
      const int val = d <= spec.m ? 1 : 0;
      std::vector<Rational> fe(static_cast<std::size_t>(K), Rational(val));
      v.f_exact[d] = fe;
      v.lambda_exact[d] = local_lambda(fe, d);
    } else if (v.exact) {
      std::vector<Rational> lam(static_cast<std::size_t>(K));
      for (int k = 1; k <= K; ++k) lam[k - 1] = (*chi_exact)[static_cast<std::size_t>(k * d)] * d;
      v.lambda_exact[d] = lam;
      v.f_exact[d] = local_exp(lam, d);
    }
    if (v.exact) {
      for (const auto& x : v.f_exact[d]) v.f[d].push_back(Complex(x.get_d(), 0.0));
      for (const auto& x : v.lambda_exact[d]) v.lambda[d].push_back(Complex(x.get_d(), 0.0));
    } else {
      std::vector<Complex> lam(static_cast<std::size_t>(K));
      for (int k = 1; k <= K; ++k) lam[k - 1] = chi[static_cast<std::size_t>(k * d)] * static_cast<double>(d);
      v.lambda[d] = lam;
      v.f[d] = local_exp(lam, d);
    }
    v.f[d].insert(v.f[d].begin(), Complex(1.0));
    if (v.exact) v.f_exact[d].insert(v.f_exact[d].begin(), Rational(1));
  }
  return v;
}

Rational oracle_chi_exact(const ChiSpec& spec, std::uint32_t q, int k) {
  if (k < 1) throw std::invalid_argument("oracle_chi: k must be >= 1");
  if (!spec.is_rational()) throw std::invalid_argument("oracle_chi_exact: spec is not rational");
  const auto& h = factor_histogram(q, k);
  const auto v = prime_power_values(spec, q, k);
  Rational s = 0;
  for (const auto& [t, c] : h.counts)
    if (t.size() == 1) s += Rational(BigInt(static_cast<unsigned long>(c))) * v.lambda_exact[t[0].first][t[0].second - 1];
  return canon(s / q_power(q, k));
}

Complex oracle_chi(const ChiSpec& spec, std::uint32_t q, int k, double theta) {
  if (k < 1) throw std::invalid_argument("oracle_chi: k must be >= 1");
  const auto& h = factor_histogram(q, k);
  const auto v = prime_power_values(spec, q, k);
  Complex s{};
  for (const auto& [t, c] : h.counts)
    if (t.size() == 1) s += static_cast<double>(c) * v.lambda[t[0].first][t[0].second - 1];
  // Twisting f by e(-theta deg) multiplies Lambda_f(F) by e(-theta deg F).
  return s * unit_exp(-theta * k) / std::pow(static_cast<double>(q), k);
}

Rational oracle_sigma_exact(const ChiSpec& spec, std::uint32_t q, int n) {
  if (!spec.is_rational()) throw std::invalid_argument("oracle_sigma_exact: spec is not rational");
  const auto& h = factor_histogram(q, n);
  const auto v = prime_power_values(spec, q, n);
  Rational s = 0;
  for (const auto& [t, c] : h.counts) {
    Rational p = 1;
    for (const auto& [d, e] : t) p *= v.f_exact[d][e];
    s += Rational(BigInt(static_cast<unsigned long>(c))) * p;
  }
  return canon(s / q_power(q, n));
}

Complex oracle_sigma(const ChiSpec& spec, std::uint32_t q, int n, double theta) {
  const auto& h = factor_histogram(q, n);
  const auto v = prime_power_values(spec, q, n);
  Complex s{};
  for (const auto& [t, c] : h.counts) {
    Complex p = 1.0;
    for (const auto& [d, e] : t) p *= v.f[d][e] * unit_exp(-theta * d * e);
    s += static_cast<double>(c) * p;
  }
  return s / std::pow(static_cast<double>(q), n);
}

ExactChiSeq consistent_chi_exact(const ChiSpec& spec, std::uint32_t q, std::size_t N) {
  if (!is_smooth(spec)) return realize_exact(spec, N);
  const fq::FieldSize field(q);
  std::vector<Rational> v(N);
  for (std::size_t k = 1; k <= N; ++k) {
    BigInt s = 0;
    for (int d = 1; d <= spec.m && static_cast<std::size_t>(d) <= k; ++d)
      if (k % static_cast<std::size_t>(d) == 0) s += d * fq::count_irreducibles_formula(field, d);
    v[k - 1] = canon(Rational(s) / q_power(q, static_cast<int>(k)));
  }
  return ExactChiSeq(std::move(v), Rational(1));
}

ChiSeq consistent_chi(const ChiSpec& spec, std::uint32_t q, std::size_t N) {
  if (is_smooth(spec) || spec.is_rational()) return consistent_chi_exact(spec, q, N).to_float();
  return realize(spec, N);
}

std::string OracleReport::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = nlohmann::json::parse(spec);
  j["q"] = q;
  j["n_max"] = n_max;
  j["mode"] = exact ? "exact" : "float";
  j["all_pass"] = all_pass;
  j["mismatches"] = nlohmann::json::array();
  for (const auto& m : mismatches)
    j["mismatches"].push_back({{"what", m.what}, {"q", m.q}, {"degree", m.degree}, {"expected", m.expected}, {"got", m.got}});
  return j.dump(2);
}

OracleReport oracle_certify(const ChiSpec& spec, std::uint32_t q, int n_max) {
  if (n_max < 1) throw std::invalid_argument("oracle_certify: n_max must be >= 1");
  check_feasible(q, n_max);
  const fq::FieldSize field(q);
  OracleReport rep;
  rep.spec = spec_to_json(spec);
  rep.q = q;
  rep.n_max = n_max;
  rep.exact = spec.is_rational();
  auto fail = [&](std::string what, int deg, std::string expected, std::string got) {
    rep.all_pass = false;
    rep.mismatches.push_back({std::move(what), q, deg, std::move(expected), std::move(got)});
  };
  const auto N = static_cast<std::size_t>(n_max);
  const auto values = prime_power_values(spec, q, n_max);
  const double kappa = is_smooth(spec) ? 1.0 : spec.kappa();

  for (int d = 1; d <= n_max; ++d)
    for (std::size_t k = 0; k < values.lambda[d].size(); ++k) {
      const bool ok = rep.exact ? abs(values.lambda_exact[d][k]) <= rational_from_double(kappa) * d
                                : std::abs(values.lambda[d][k]) <= kappa * d * (1.0 + kKappaTolerance);
      if (!ok) fail("lambda_bound", d * static_cast<int>(k + 1), "|Lambda| <= " + std::to_string(kappa * d),
                    str(values.lambda[d][k]));
    }

  for (int n = 1; n <= n_max; ++n) {
    const auto& h = factor_histogram(q, n);
    const BigInt expect_irr = fq::count_irreducibles_formula(field, n);
    if (BigInt(static_cast<unsigned long>(h.irreducible_count())) != expect_irr)
      fail("irreducible_count", n, expect_irr.get_str(), std::to_string(h.irreducible_count()));
    const BigInt qn = q_power(q, n).get_num();
    if (h.lambda_sum() != qn) fail("lambda_sum", n, qn.get_str(), h.lambda_sum().get_str());
  }

  if (rep.exact) {
    const auto chi = consistent_chi_exact(spec, q, N);
    const auto sigma = sigma_from_chi(chi, N);
    for (int n = 1; n <= n_max; ++n) {
      const Rational oc = oracle_chi_exact(spec, q, n);
      if (oc != chi[static_cast<std::size_t>(n)]) fail("chi", n, str(chi[static_cast<std::size_t>(n)]), str(oc));
      const Rational os = oracle_sigma_exact(spec, q, n);
      if (os != sigma[static_cast<std::size_t>(n)]) fail("sigma", n, str(sigma[static_cast<std::size_t>(n)]), str(os));
    }
  } else {
    const auto chi = consistent_chi(spec, q, N);
    const auto sigma = sigma_from_chi(chi, N);
    for (int n = 1; n <= n_max; ++n) {
      const auto un = static_cast<std::size_t>(n);
      const Complex oc = oracle_chi(spec, q, n);
      if (std::abs(oc - chi[un]) > 1e-12 * std::max(1.0, std::abs(chi[un]))) fail("chi", n, str(chi[un]), str(oc));
      const Complex os = oracle_sigma(spec, q, n);
      if (std::abs(os - sigma[un]) > 1e-12 * std::max(1.0, std::abs(sigma[un])))
        fail("sigma", n, str(sigma[un]), str(os));
    }
  }
  return rep;
}

}  // namespace ffmean::oracle
