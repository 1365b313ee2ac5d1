// ffmean: batch front-end emitting CSV/JSON tables. Exit 0 iff every check in the run passes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ffmean/chi_spec.hpp"
#include "ffmean/halasz_bounds.hpp"
#include "ffmean/lipschitz.hpp"
#include "ffmean/mult_series.hpp"
#include "ffmean/oracle.hpp"
#include "ffmean/parallel.hpp"
#include "ffmean/report.hpp"
#include "ffmean/worked_examples.hpp"

using namespace ffmean;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string command;
  std::string spec = "stock:one";
  std::size_t n = 10;
  std::size_t n_max = 0;
  std::vector<std::size_t> ell;
  std::uint32_t q = 2;
  std::size_t m = 10;
  std::size_t max_m = 100;
  std::size_t points = 2;
  std::string mode = "float";
  std::uint64_t seed = 0;
  std::size_t seeds = 0;
  std::vector<double> sigma;
  std::string out = "-";
  double tol_slack = 1e-9;
  double tol_prop1 = 1e-6;
  double tol_cert = 1e-6;
  double tol_quad = 1e-5;
  double tol_cm = 1e-10;
  double tol_root = 1e-9;
  double thm2_k = 64.0;

  std::string json() const {
    Json j;
    j["command"] = command;
    j["spec"] = spec;
    j["n"] = n;
    j["n_max"] = n_max;
    j["ell"] = ell;
    j["q"] = q;
    j["m"] = m;
    j["max_m"] = max_m;
    j["points"] = points;
    j["mode"] = mode;
    j["seed"] = seed;
    j["seeds"] = seeds;
    j["sigma"] = sigma;
    j["tol_slack"] = tol_slack;
    j["tol_prop1"] = tol_prop1;
    j["tol_cert"] = tol_cert;
    j["tol_quad"] = tol_quad;
    j["tol_cm"] = tol_cm;
    j["tol_root"] = tol_root;
    j["thm2_k"] = thm2_k;
    return j.dump();
  }
};

std::string label(const ChiSpec& s) { return s.name.empty() ? spec_to_json(s) : s.name; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Random Halasz suite: kappa and n cycle with the seed.
void suite_params(std::uint64_t s, double& kappa, std::size_t& n) {
  const double kappas[] = {0.5, 1.0, 2.0};
  kappa = kappas[s % 3];
  n = std::size_t(4) << ((s / 3) % 7);
}

int cmd_sigma(const RunConfig& c) {
  const bool exact = c.mode == "exact";
  CsvTable t(c.json(), {}, "spec,n,sigma_re,sigma_im,trivial_bound");
  for (const auto& spec : load_specs(c.spec)) {
    const double kappa = spec.kappa();
    if (exact) {
      const auto s = sigma_from_chi(realize_exact(spec, c.n), c.n);
      for (std::size_t n = 1; n <= c.n; ++n)
        t.add_row(csv_field(label(spec)) + "," + std::to_string(n) + "," + to_string(s[n]) + ",0," +
                  fmt_double(trivial_bound(kappa, n)));
    } else {
      const auto s = sigma_from_chi(realize(spec, c.n), c.n);
      for (std::size_t n = 1; n <= c.n; ++n)
        t.add_row(csv_field(label(spec)) + "," + std::to_string(n) + "," + fmt_double(s[n].real()) + "," +
                  fmt_double(s[n].imag()) + "," + fmt_double(trivial_bound(kappa, n)));
    }
  }
  t.write(c.out);
  return 0;
}

int cmd_verify_halasz(const RunConfig& c) {
  struct Case {
    std::string name;
    ChiSpec spec;
    double kappa;
    std::size_t n;
  };
  std::vector<Case> cases;
  if (c.seeds) {
    for (std::uint64_t s = c.seed; s < c.seed + c.seeds; ++s) {
      double kappa;
      std::size_t n;
      suite_params(s, kappa, n);
      cases.push_back({"seed" + std::to_string(s), ChiSpec::random(s, kappa), kappa, n});
    }
  } else {
    for (const auto& spec : load_specs(c.spec)) cases.push_back({label(spec), spec, spec.kappa(), c.n});
  }
  HalaszIntegralOptions opts;
  opts.rel_tol = c.tol_quad;
  opts.max_rel_tol = c.tol_cert;
  std::vector<std::string> rows(cases.size());
  std::vector<char> ok(cases.size(), 0);
  parallel_for(cases.size(), 0, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      const auto& k = cases[i];
      const auto r = verify_halasz(realize(k.spec, k.n), k.n, k.kappa, opts);
      ok[i] = r.passes(-c.tol_slack);
      rows[i] = csv_field(k.name) + "," + halasz_csv_row(r) + "," + (ok[i] ? "1" : "0");
    }
  });
  CsvTable t(c.json(), {{"tol_slack", c.tol_slack}, {"tol_quad", c.tol_quad}, {"tol_cert", c.tol_cert}},
             "case," + halasz_csv_header() + ",pass");
  for (auto& r : rows) t.add_row(r);
  t.write(c.out);
  const auto bad = std::find(ok.begin(), ok.end(), 0);
  if (bad != ok.end()) {
    std::fprintf(stderr, "verify-halasz: first failure: %s\n", cases[static_cast<std::size_t>(bad - ok.begin())].name.c_str());
    return 1;
  }
  return 0;
}

int cmd_lipschitz_scan(const RunConfig& c) {
  struct Case {
    std::string name;
    ChiSpec spec;
  };
  std::vector<Case> cases;
  if (c.seeds)
    for (std::uint64_t s = c.seed; s < c.seed + c.seeds; ++s) cases.push_back({"seed" + std::to_string(s), ChiSpec::random(s, 1.0)});
  else
    for (const auto& spec : load_specs(c.spec)) cases.push_back({label(spec), spec});
  std::vector<std::size_t> ells = c.ell;
  if (ells.empty()) ells = {1, 2, std::max<std::size_t>(1, c.n / 2)};
  for (auto l : ells)
    if (l < 1 || l > c.n) throw std::invalid_argument("--ell must lie in [1, n]");
  const std::size_t N = c.n + *std::max_element(ells.begin(), ells.end());
  std::vector<std::string> rows(cases.size() * ells.size());
  std::vector<char> ok(rows.size(), 0);
  parallel_for(cases.size(), 0, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      if (cases[i].spec.kappa() > 1.0) throw std::invalid_argument("lipschitz-scan needs kappa <= 1: " + cases[i].name);
      const auto chi = realize(cases[i].spec, N);
      for (std::size_t j = 0; j < ells.size(); ++j) {
        auto r = theorem2_verify(chi, c.n, ells[j], c.thm2_k);
        r.prop1_pass = r.lhs <= r.prop1_rhs + c.tol_prop1;
        const std::size_t k = i * ells.size() + j;
        ok[k] = r.prop1_pass && r.thm2_pass;
        rows[k] = csv_field(cases[i].name) + "," + lipschitz_csv_row(r);
      }
    }
  });
  CsvTable t(c.json(), {{"tol_prop1", c.tol_prop1}, {"thm2_k", c.thm2_k}}, "case," + lipschitz_csv_header());
  for (auto& r : rows) t.add_row(r);
  t.write(c.out);
  const auto bad = std::find(ok.begin(), ok.end(), 0);
  if (bad != ok.end()) {
    const auto k = static_cast<std::size_t>(bad - ok.begin());
    std::fprintf(stderr, "lipschitz-scan: first failure: %s ell=%zu\n", cases[k / ells.size()].name.c_str(),
                 ells[k % ells.size()]);
    return 1;
  }
  return 0;
}

int cmd_oracle_compare(const RunConfig& c) {
  const int n_max = static_cast<int>(c.n_max ? c.n_max : c.n);
  Json out = Json::array();
  bool all = true;
  std::string first;
  for (const auto& spec : load_specs(c.spec)) {
    const auto rep = oracle::oracle_certify(spec, c.q, n_max);
    out.push_back(Json::parse(rep.to_json()));
    if (!rep.all_pass && first.empty()) first = label(spec);
    all = all && rep.all_pass;
  }
  const Json doc = out.size() == 1 ? out[0] : out;
  write_atomic(c.out, doc.dump(2) + "\n");
  if (!all) {
    std::fprintf(stderr, "oracle-compare: first failure: %s\n", first.c_str());
    return 1;
  }
  return 0;
}

int cmd_cm_table(const RunConfig& c) {
  CsvTable t(c.json(), {{"tol_cm", c.tol_cm}}, "m,sum,closed,series,max_disagreement,pass");
  std::size_t first_bad = 0;
  for (std::size_t m = 1; m <= c.max_m; ++m) {
    const auto v = c_m(m);
    const bool ok = v.max_disagreement() <= c.tol_cm;
    if (!ok && !first_bad) first_bad = m;
    t.add_row(std::to_string(m) + "," + fmt_double(v.sum) + "," + fmt_double(v.closed) + "," + fmt_double(v.series) +
              "," + fmt_double(v.max_disagreement()) + "," + (ok ? "1" : "0"));
  }
  t.write(c.out);
  if (first_bad) {
    std::fprintf(stderr, "cm-table: first failure: m=%zu\n", first_bad);
    return 1;
  }
  return 0;
}

int cmd_smooth_table(const RunConfig& c) {
  CsvTable t(c.json(), {}, "m,n,sigma,rho,ratio");
  std::string first;
  for (std::size_t m = 1; m <= c.m; ++m) {
    const std::size_t N = c.n_max ? c.n_max : 50 * m;
    const auto s = examples::smooth_sigma(m, N);
    for (std::size_t n = 0; n <= N; ++n) {
      const double u = static_cast<double>(n) / static_cast<double>(m);
      if (u > examples::default_dickman().u_max()) break;
      const double rho = examples::dickman_rho(u), sig = s[n].real();
      if (sig < rho && first.empty()) first = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      t.add_row(std::to_string(m) + "," + std::to_string(n) + "," + fmt_double(sig) + "," + fmt_double(rho) + "," +
                fmt_double(sig / rho));
    }
  }
  t.write(c.out);
  if (!first.empty()) {
    std::fprintf(stderr, "smooth-table: first failure: %s\n", first.c_str());
    return 1;
  }
  return 0;
}

int cmd_example9(const RunConfig& c) {
  const std::size_t N = c.n_max ? c.n_max : 4096;
  const auto cfg = examples::random_point_mass(c.seed, c.points);
  const auto s = sigma_from_chi(examples::point_mass_chi(cfg, N), N);
  CsvTable t(c.json(), {}, "n,sigma_re,sigma_im,main_re,main_im,n_times_err");
  for (std::size_t n = 1; n <= N; ++n) {
    const Complex main = examples::example9_main_term(cfg, n);
    t.add_row(std::to_string(n) + "," + fmt_double(s[n].real()) + "," + fmt_double(s[n].imag()) + "," +
              fmt_double(main.real()) + "," + fmt_double(main.imag()) + "," +
              fmt_double(static_cast<double>(n) * std::abs(s[n] - main)));
  }
  t.write(c.out);
  return 0;
}

int cmd_roots(const RunConfig& c) {
  const double q = static_cast<double>(c.q);
  std::vector<std::pair<std::string, SigmaSeq>> inputs;
  if (!c.sigma.empty()) {
    SigmaSeq s;
    for (double x : c.sigma) s.values.emplace_back(x, 0.0);
    inputs.emplace_back("sigma", s);
  } else {
    for (const auto& spec : load_specs(c.spec)) inputs.emplace_back(label(spec), sigma_from_chi(realize(spec, c.n), c.n));
  }
  CsvTable t(c.json(), {{"tol_root", c.tol_root}}, "case,j,alpha_re,alpha_im,abs_over_q,residual");
  std::string first;
  for (const auto& [name, sigma] : inputs) {
    const auto r = examples::remark7_roots(sigma, q);
    if (r.max_residual > c.tol_root && first.empty()) first = name;
    for (std::size_t j = 0; j < r.alphas.size(); ++j)
      t.add_row(csv_field(name) + "," + std::to_string(j + 1) + "," + fmt_double(r.alphas[j].real()) + "," +
                fmt_double(r.alphas[j].imag()) + "," + fmt_double(std::abs(r.alphas[j]) / q) + "," +
                fmt_double(r.max_residual));
  }
  t.write(c.out);
  if (!first.empty()) {
    std::fprintf(stderr, "roots: residual above tolerance: %s\n", first.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean values of multiplicative functions over F_q[x]"};
  app.require_subcommand(1);
  RunConfig c;

  auto spec = [&](CLI::App* s) { s->add_option("--spec", c.spec, "PATH or stock:NAME")->capture_default_str(); };
  auto out = [&](CLI::App* s) { s->add_option("--out", c.out, "Output file, - for stdout")->capture_default_str(); };
  const auto pos = CLI::PositiveNumber;

  auto* sigma = app.add_subcommand("sigma", "sigma(1..n) for each spec");
  spec(sigma);
  sigma->add_option("--n", c.n)->check(pos)->capture_default_str();
  sigma->add_option("--mode", c.mode)->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  out(sigma);

  auto* halasz = app.add_subcommand("verify-halasz", "Halasz-type bound and corollary");
  spec(halasz);
  halasz->add_option("--n", c.n)->check(CLI::Range(std::size_t(2), std::size_t(1) << 20))->capture_default_str();
  halasz->add_option("--seed", c.seed, "First seed of the random suite");
  halasz->add_option("--seeds", c.seeds, "Run the random suite with this many seeds");
  halasz->add_option("--tol-slack", c.tol_slack)->check(pos)->capture_default_str();
  halasz->add_option("--tol-quad", c.tol_quad)->check(pos)->capture_default_str();
  halasz->add_option("--tol-cert", c.tol_cert)->check(pos)->capture_default_str();
  out(halasz);

  auto* lip = app.add_subcommand("lipschitz-scan", "Explicit and asymptotic Lipschitz inequalities");
  spec(lip);
  lip->add_option("--n", c.n)->check(CLI::Range(std::size_t(2), std::size_t(1) << 20))->capture_default_str();
  lip->add_option("--ell", c.ell, "Shifts (default 1, 2, n/2)");
  lip->add_option("--seed", c.seed);
  lip->add_option("--seeds", c.seeds);
  lip->add_option("--tol-prop1", c.tol_prop1)->check(pos)->capture_default_str();
  lip->add_option("--thm2-k", c.thm2_k)->check(pos)->capture_default_str();
  out(lip);

  auto* oc = app.add_subcommand("oracle-compare", "Brute-force enumeration against the series engine");
  spec(oc);
  oc->add_option("--q", c.q)->capture_default_str();
  oc->add_option("--n-max", c.n_max)->check(pos)->required();
  out(oc);

  auto* cmt = app.add_subcommand("cm-table", "c_m in three forms");
  cmt->add_option("--max-m", c.max_m)->check(pos)->capture_default_str();
  cmt->add_option("--tol-cm", c.tol_cm)->check(pos)->capture_default_str();
  out(cmt);

  auto* st = app.add_subcommand("smooth-table", "Smooth mean values against Dickman rho");
  st->add_option("--m", c.m, "Largest m")->check(pos)->capture_default_str();
  st->add_option("--n-max", c.n_max, "Largest n (default 50 m)");
  out(st);

  auto* ex9 = app.add_subcommand("example9", "Point-mass chi against the main term");
  ex9->add_option("--seed", c.seed)->capture_default_str();
  ex9->add_option("--points", c.points)->check(pos)->capture_default_str();
  ex9->add_option("--n-max", c.n_max, "Largest n (default 4096)");
  out(ex9);

  auto* roots = app.add_subcommand("roots", "Roots of a terminating sigma");
  spec(roots);
  roots->add_option("--sigma", c.sigma, "sigma(0..k) followed by a zero")->delimiter(',');
  roots->add_option("--q", c.q)->capture_default_str();
  roots->add_option("--n", c.n)->check(pos)->capture_default_str();
  roots->add_option("--tol-root", c.tol_root)->check(pos)->capture_default_str();
  out(roots);

  CLI11_PARSE(app, argc, argv);
  c.command = app.get_subcommands().front()->get_name();

  try {
    if (c.command == "sigma") return cmd_sigma(c);
    if (c.command == "verify-halasz") return cmd_verify_halasz(c);
    if (c.command == "lipschitz-scan") return cmd_lipschitz_scan(c);
    if (c.command == "oracle-compare") return cmd_oracle_compare(c);
    if (c.command == "cm-table") return cmd_cm_table(c);
    if (c.command == "smooth-table") return cmd_smooth_table(c);
    if (c.command == "example9") return cmd_example9(c);
    if (c.command == "roots") return cmd_roots(c);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ffmean %s: %s\n", c.command.c_str(), e.what());
    return 2;
  }
  return 2;
}
