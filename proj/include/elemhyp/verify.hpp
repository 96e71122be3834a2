// Verification grids shared by `elemhyp verify` and the acceptance runner.
// Each check compares a closed form or expansion against an independent
// oracle (defining series, direct operator summation, Frobenius series).
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "elemhyp/basis.hpp"
#include "elemhyp/heun.hpp"
#include "elemhyp/hypergeom.hpp"
#include "elemhyp/mkz.hpp"
#include "elemhyp/numcore.hpp"
#include "elemhyp/polylog.hpp"
#include "elemhyp/report.hpp"

namespace elemhyp::verify {

/// A named group of entries sharing one tolerance.
struct CheckGroup {
  std::string name;
  double tolerance = 0.0;
  std::vector<ReportEntry> entries;

  void add(std::string op, std::vector<std::pair<std::string, double>> inputs, double result,
           double oracle) {
    entries.push_back(make_entry(std::move(op), std::move(inputs), result, oracle, tolerance));
  }
  bool pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  double max_rel_err() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.rel_err);
    return m;
  }
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<CheckGroup> groups;

  bool pass() const {
    for (const auto& g : groups)
      if (!g.pass()) return false;
    return true;
  }
};

namespace detail {

// x = lo, lo + step, ..., hi, built from integers to avoid drift.
inline std::vector<double> grid(int lo_tenths, int hi_tenths, int step = 1, double unit = 0.1) {
  std::vector<double> xs;
  for (int i = lo_tenths; i <= hi_tenths; i += step) xs.push_back(i * unit);
  return xs;
}

inline EvalPolicy oracle_policy(const EvalPolicy& base, double rel_tol) {
  EvalPolicy p = base;
  p.rel_tol = std::min(base.rel_tol, rel_tol);
  return p;
}

inline double series_value(const SeriesResult& r, const char* who) {
  if (!r.converged) throw NotConverged(std::string(who) + ": oracle did not converge");
  return r.value;
}

inline double bool_value(bool b) { return b ? 1.0 : 0.0; }

}  // namespace detail

/// f_{n,3}(x) written out term by term from its explicit double-sum form,
/// evaluated in WideReal.
inline double fn3_transcribed(int n, double x) {
  using std::log1p;
  const WideReal xr(x);
  const WideReal y = WideReal(1) - xr;
  const WideReal lg = log1p(-xr);
  CompensatedSum<WideReal> outer;
  for (int i = 1; i <= n - 1; ++i) {
    CompensatedSum<WideReal> inner;
    for (int l = 0; l <= i - 2; ++l) {
      const int e = i - l - 1;
      inner += (WideReal(1) - ipow(y, e)) / (WideReal(e) * ipow(y, e));
    }
    inner += -lg;
    const WideReal sign = (i % 2 == 0) ? WideReal(1) : WideReal(-1);
    outer += binomial<WideReal>(n - 1, i) * sign / WideReal(i) * inner.value();
  }
  outer += polylog_t<WideReal>(PolylogOrder(2), xr, EvalPolicy{}.tightened_for<WideReal>());
  const WideReal lead = ((n - 1) % 2 == 0 ? WideReal(1) : WideReal(-1)) / (WideReal(n) * ipow(xr, n));
  return static_cast<double>(lead * outer.value());
}

/// L_n e_2 through a Beta(k, n) type kernel: sum_k m_{n,k}(x) k(k+1)/((n+k)(n+k+1)).
inline SeriesResult ln_genuine_apply_e2(int n, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("ln_genuine_apply_e2: n must be >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("ln_genuine_apply_e2: x must lie in [0, 1)");
  double w = std::pow(1.0 - x, n + 1);
  return sum_series(
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        const double term = w * kd * (kd + 1.0) / ((n + kd) * (n + kd + 1.0));
        w *= (n + kd + 1.0) / (kd + 1.0) * x;
        return term;
      },
      policy);
}

/// Taylor coefficient of x^j in the (finite) 2F1 expansion divided by u(0),
/// from Pochhammer products alone.
inline WideReal heun_expansion_taylor_coeff(const HeunFamilyParams& fp, int j) {
  const auto r = heun_termination(fp);
  if (!r) throw InvalidParams("heun_expansion_taylor_coeff: expansion must terminate");
  CompensatedSum<WideReal> acc;
  CompensatedSum<WideReal> norm;
  WideReal c(1);
  for (int k = 0; k < *r; ++k) {
    norm += c;
    WideReal t = c;
    for (int i = 0; i < j; ++i)
      t *= (WideReal(fp.m) + i) * (WideReal(fp.n) + i) / ((WideReal(fp.p) + 2 * k + i) * (i + 1));
    acc += t;
    c *= elemhyp::detail::heun_coeff_ratio<WideReal>(fp, k);
  }
  return acc.value() / norm.value();
}

// -- criteria -------------------------------------------------------------------

inline Criterion hypergeom_oracle(const EvalPolicy& policy = {}) {
  Criterion c{1, "general 2F1 closed form vs defining series", {}};
  CheckGroup g{"closed_general vs series", 1e-8, {}};
  const EvalPolicy tight = detail::oracle_policy(policy, 1e-13);
  for (int m = 1; m <= 4; ++m)
    for (int p = m + 1; p <= 8; ++p)
      for (double n : {-2.5, -1.0, 0.5, 1.0, 2.0, 3.75})
        for (double x : detail::grid(1, 9)) {
          const double oracle = detail::series_value(hyp2f1_series(m, n, p, x, tight), "hyp2f1_series");
          g.add("hyp2f1_closed_general", {{"m", m}, {"n", n}, {"p", p}, {"x", x}},
                hyp2f1_closed_general({m, n, p}, x), oracle);
        }
  c.groups.push_back(std::move(g));
  return c;
}

inline Criterion hypergeom_representations() {
  Criterion c{2, "closed-form representations agree", {}};
  const auto xs = detail::grid(1, 9);
  constexpr double tol = 1e-10;

  CheckGroup ab{"1m variant A vs B", tol, {}};
  for (int m = 1; m <= 6; ++m)
    for (int l = 0; l <= 6; ++l)
      for (double x : xs)
        ab.add("hyp2f1_closed_1m", {{"m", m}, {"l", l}, {"x", x}},
               hyp2f1_closed_1m(m, l, x, Eq3Variant::A), hyp2f1_closed_1m(m, l, x, Eq3Variant::B));
  c.groups.push_back(std::move(ab));

  CheckGroup v12{"12 variants pairwise", tol, {}};
  for (int n = 1; n <= 12; ++n)
    for (double x : xs) {
      const double v1 = hyp2f1_closed_12(n, x, Eq4Variant::One);
      const double v2 = hyp2f1_closed_12(n, x, Eq4Variant::Two);
      const double v3 = hyp2f1_closed_12(n, x, Eq4Variant::Three);
      v12.add("hyp2f1_closed_12[2 vs 1]", {{"n", n}, {"x", x}}, v2, v1);
      v12.add("hyp2f1_closed_12[3 vs 1]", {{"n", n}, {"x", x}}, v3, v1);
      v12.add("hyp2f1_closed_12[3 vs 2]", {{"n", n}, {"x", x}}, v3, v2);
    }
  c.groups.push_back(std::move(v12));

  CheckGroup chain{"specialization chain", tol, {}};
  for (int p = 2; p <= 8; ++p)
    for (double n : {-2.5, -1.0, 0.5, 1.0, 2.0, 3.75})
      for (double x : xs)
        chain.add("closed_general(m=1) vs closed_m1", {{"n", n}, {"p", p}, {"x", x}},
                  hyp2f1_closed_general({1, n, p}, x), hyp2f1_closed_m1(n, p, x));
  for (int n = 1; n <= 12; ++n)
    for (double x : xs) {
      const double v = hyp2f1_closed_12(n, x, Eq4Variant::One);
      chain.add("closed_1m(2, n-1, A) vs closed_12", {{"n", n}, {"x", x}},
                hyp2f1_closed_1m(2, n - 1, x, Eq3Variant::A), v);
      chain.add("closed_1m(2, n-1, B) vs closed_12", {{"n", n}, {"x", x}},
                hyp2f1_closed_1m(2, n - 1, x, Eq3Variant::B), v);
    }
  c.groups.push_back(std::move(chain));
  return c;
}

inline Criterion mkz_moments(const EvalPolicy& policy = {}) {
  Criterion c{3, "second moment: 2F1 form, polylog form, direct summation", {}};
  const EvalPolicy tight = detail::oracle_policy(policy, 1e-14);
  CheckGroup e2{"M_n e_2 pairwise", 1e-8, {}};
  CheckGroup low{"M_n e_0 = 1, M_n e_1 = x", 1e-10, {}};
  for (int n = 1; n <= 10; ++n)
    for (double x : detail::grid(1, 9)) {
      const auto params = GmkzParams::classical(n);
      const double hyp = mkz_moment_e2(n, x, policy);
      const double poly = mkz_moment(n, 2, x, policy);
      const double direct = detail::series_value(gmkz_apply(params, Monomial(2), x, tight), "gmkz_apply");
      e2.add("mkz_moment_e2 vs mkz_moment", {{"n", n}, {"x", x}}, hyp, poly);
      e2.add("mkz_moment_e2 vs gmkz_apply", {{"n", n}, {"x", x}}, hyp, direct);
      e2.add("mkz_moment vs gmkz_apply", {{"n", n}, {"x", x}}, poly, direct);
      low.add("gmkz_apply e_0", {{"n", n}, {"x", x}},
              detail::series_value(gmkz_apply(params, Monomial(0), x, tight), "gmkz_apply"), 1.0);
      low.add("gmkz_apply e_1", {{"n", n}, {"x", x}},
              detail::series_value(gmkz_apply(params, Monomial(1), x, tight), "gmkz_apply"), x);
      low.add("mkz_moment r=1", {{"n", n}, {"x", x}}, mkz_moment(n, 1, x, policy), x);
    }
  c.groups.push_back(std::move(e2));
  c.groups.push_back(std::move(low));
  return c;
}

inline Criterion basis_structure(const EvalPolicy& policy = {}) {
  Criterion c{4, "symbolic basis structure of f_{n,j}", {}};
  const EvalPolicy tight = detail::oracle_policy(policy, 1e-14);
  CheckGroup card{"term count equals n", 0.0, {}};
  CheckGroup set{"basis set matches case list", 0.0, {}};
  CheckGroup value{"combo_eval vs fnj_series", 1e-8, {}};
  for (int n = 2; n <= 8; ++n)
    for (int j = 2; j <= 12; ++j) {
      const auto combo = fnj_combo(n, j);
      card.add("fnj_combo size", {{"n", n}, {"j", j}}, static_cast<double>(combo.size()), n);
      set.add("fnj_combo basis_set", {{"n", n}, {"j", j}},
              detail::bool_value(combo.basis_set() == expected_basis_set(n, j)), 1.0);
      for (double x : detail::grid(1, 9))
        value.add("combo_eval", {{"n", n}, {"j", j}, {"x", x}}, combo_eval(combo, x, policy),
                  detail::series_value(fnj_series(n, j, x, tight), "fnj_series"));
    }
  CheckGroup j3{"j=3 combo vs explicit formula", 1e-9, {}};
  for (int n = 2; n <= 8; ++n) {
    const auto combo = fnj_combo(n, 3);
    for (double x : detail::grid(1, 9))
      j3.add("combo_eval j=3", {{"n", n}, {"x", x}}, combo_eval(combo, x, policy), fn3_transcribed(n, x));
  }
  c.groups.push_back(std::move(card));
  c.groups.push_back(std::move(set));
  c.groups.push_back(std::move(value));
  c.groups.push_back(std::move(j3));
  return c;
}

inline Criterion higher_moments(const EvalPolicy& policy = {}) {
  Criterion c{5, "higher moments via polylog combinations", {}};
  const EvalPolicy tight = detail::oracle_policy(policy, 1e-14);
  CheckGroup g{"mkz_moment vs gmkz_apply", 1e-7, {}};
  for (int r = 3; r <= 5; ++r)
    for (int n = 2; n <= 8; ++n)
      for (double x : detail::grid(1, 8))
        g.add("mkz_moment", {{"n", n}, {"r", r}, {"x", x}}, mkz_moment(n, r, x, policy),
              detail::series_value(gmkz_apply(GmkzParams::classical(n), Monomial(r), x, tight), "gmkz_apply"));
  c.groups.push_back(std::move(g));
  return c;
}

inline Criterion other_operators(const EvalPolicy& policy = {}) {
  Criterion c{6, "L_n and generalized MKZ operators", {}};
  const EvalPolicy tight = detail::oracle_policy(policy, 1e-14);
  const auto xs = detail::grid(1, 9);

  CheckGroup ln{"ln_moment_e2 vs Beta-integral oracle", 1e-8, {}};
  for (int n = 1; n <= 8; ++n)
    for (double x : xs)
      ln.add("ln_moment_e2", {{"n", n}, {"x", x}}, ln_moment_e2(n, x, policy),
             detail::series_value(ln_apply_e2(n, x, tight), "ln_apply_e2"));
  c.groups.push_back(std::move(ln));

  CheckGroup affine{"M_{n,alpha+1}^{alpha,beta} e_1 affine identity", 1e-10, {}};
  for (int alpha = 0; alpha <= 4; ++alpha)
    for (double beta : {0.0, alpha / 2.0, static_cast<double>(alpha)})
      for (int n = 1; n <= 4; ++n)
        for (double x : xs) {
          const GmkzParams gp{n, alpha + 1, static_cast<double>(alpha), beta};
          const double b = beta / (n + alpha);
          const double expected = b + (1.0 - b) * x;
          const std::vector<std::pair<std::string, double>> in{
              {"n", n}, {"alpha", alpha}, {"beta", beta}, {"x", x}};
          affine.add("gmkz_e1", in, gmkz_e1(gp, x, policy), expected);
          affine.add("gmkz_apply e_1", in,
                     detail::series_value(gmkz_apply(gp, Monomial(1), x, tight), "gmkz_apply"), expected);
        }
  c.groups.push_back(std::move(affine));

  CheckGroup abel{"gmkz_moment_abel vs gmkz_apply", 1e-8, {}};
  for (int n : {1, 2, 3, 5})
    for (int alpha : {0, 1, 2, 4})
      for (double beta : {0.0, alpha / 2.0, static_cast<double>(alpha)})
        for (int m = 0; m <= 4; ++m)
          for (double x : xs) {
            const GmkzParams gp{n, alpha + 1, static_cast<double>(alpha), beta};
            abel.add("gmkz_moment_abel", {{"n", n}, {"alpha", alpha}, {"beta", beta}, {"m", m}, {"x", x}},
                     gmkz_moment_abel(n, alpha, beta, m, x, policy),
                     detail::series_value(gmkz_apply(gp, Monomial(m), x, tight), "gmkz_apply"));
          }
  c.groups.push_back(std::move(abel));
  return c;
}

/// Terminating (m, n, p) with r <= 4, from both integer conditions.
inline std::vector<HeunFamilyParams> heun_terminating_cases() {
  std::vector<HeunFamilyParams> out;
  for (int m = 1; m <= 3; ++m)
    for (int p = m + 1; p <= m + 3; ++p)
      for (int r = 1; r <= 4; ++r) {
        const double na = 3.0 - 2.0 * r - m;
        if (na != 0.0) out.push_back({m, na, p});
        out.push_back({m, p + 2.0 * r - 2.0, p});
      }
  return out;
}

inline std::vector<HeunFamilyParams> heun_nonterminating_cases() {
  return {{1, 2.0, 3}, {2, 0.5, 4}, {1, 0.5, 3}, {3, 1.5, 5}};
}

/// Frobenius oracle normalized to u(0) = 1, with the resonant coefficient
/// supplied from the exact Taylor expansion when needed.
inline double heun_oracle_value(const HeunFamilyParams& fp, double x) {
  constexpr int kOracleTerms = 800;
  const HeunSpec spec = heun_params_from(fp);
  std::optional<WideReal> resonant;
  if (const auto j = heun_resonant_index(spec)) resonant = heun_expansion_taylor_coeff(fp, *j);
  return static_cast<double>(heun_series_oracle_t<WideReal>(spec, WideReal(x), kOracleTerms, resonant));
}

inline Criterion heun_suite(const EvalPolicy& policy = {}) {
  Criterion c{7, "Heun family expansion", {}};
  constexpr int kTerms = 40;
  constexpr double kStep = 1e-4;

  CheckGroup ident{"parameter identities", 0.0, {}};
  for (int m = 1; m <= 4; ++m)
    for (int p = m + 1; p <= m + 4; ++p)
      for (double n : {-2.5, -1.0, 0.5, 1.0, 2.0, 3.75, 7.0}) {
        const HeunSpec s = heun_params_from({m, n, p});
        const std::vector<std::pair<std::string, double>> in{{"m", m}, {"n", n}, {"p", p}};
        ident.add("gamma+epsilon", in, s.gamma + s.epsilon, p);
        ident.add("gamma+delta", in, s.gamma + s.delta, 2.0);
        ident.add("q", in, s.q, s.a * s.alpha * s.beta + s.a * (1.0 - s.delta) * s.epsilon);
      }
  c.groups.push_back(std::move(ident));

  const auto xs = detail::grid(1, 9, 1, 0.05);
  CheckGroup drift{"terminating sums independent of K", 1e-14, {}};
  CheckGroup term{"terminating vs Frobenius oracle", 1e-8, {}};
  for (const auto& fp : heun_terminating_cases()) {
    const int r = *heun_termination(fp);
    const double norm = heun_normalization(fp, policy);
    for (double x : xs) {
      const std::vector<std::pair<std::string, double>> in{{"m", fp.m}, {"n", fp.n}, {"p", fp.p}, {"x", x}};
      const double at_r = heun_eval(fp, x, r, policy).value;
      drift.add("heun_eval K=r+10 vs K=r", in, heun_eval(fp, x, r + 10, policy).value, at_r);
      drift.add("heun_eval K=60 vs K=r", in, heun_eval(fp, x, 60, policy).value, at_r);
      term.add("heun_eval/normalization", in, at_r / norm, heun_oracle_value(fp, x));
    }
  }
  c.groups.push_back(std::move(drift));
  c.groups.push_back(std::move(term));

  CheckGroup nonterm{"non-terminating vs Frobenius oracle", 1e-6, {}};
  for (const auto& fp : heun_nonterminating_cases()) {
    const double norm = heun_normalization(fp, policy);
    for (double x : xs)
      nonterm.add("heun_eval/normalization", {{"m", fp.m}, {"n", fp.n}, {"p", fp.p}, {"x", x}},
                  heun_eval(fp, x, kTerms, policy).value / norm, heun_oracle_value(fp, x));
  }
  c.groups.push_back(std::move(nonterm));

  const auto ode_xs = detail::grid(2, 8, 1, 0.05);
  CheckGroup ode_t{"ODE residual, terminating", 1e-3, {}};
  CheckGroup ode_n{"ODE residual, non-terminating", 1e-3, {}};
  auto residual_entries = [&](CheckGroup& g, const HeunFamilyParams& fp) {
    for (double x : ode_xs) {
      const auto res = heun_ode_residual(fp, x, kStep, kTerms, policy);
      g.add("heun_ode_residual", {{"m", fp.m}, {"n", fp.n}, {"p", fp.p}, {"x", x}}, res.relative(), 0.0);
    }
  };
  for (const auto& fp : heun_terminating_cases()) residual_entries(ode_t, fp);
  for (const auto& fp : heun_nonterminating_cases()) residual_entries(ode_n, fp);
  c.groups.push_back(std::move(ode_t));
  c.groups.push_back(std::move(ode_n));
  return c;
}

// -- suites ---------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hypergeom", "mkz", "basis", "heun", "all"};
  return names;
}

inline std::vector<Criterion> run_suite(const std::string& suite, const EvalPolicy& policy = {}) {
  std::vector<Criterion> out;
  const bool all = suite == "all";
  if (all || suite == "hypergeom") {
    out.push_back(hypergeom_oracle(policy));
    out.push_back(hypergeom_representations());
  }
  if (all || suite == "mkz") {
    out.push_back(mkz_moments(policy));
    out.push_back(higher_moments(policy));
    out.push_back(other_operators(policy));
  }
  if (all || suite == "basis") out.push_back(basis_structure(policy));
  if (all || suite == "heun") out.push_back(heun_suite(policy));
  if (out.empty()) throw InvalidParams("verify: unknown suite '" + suite + "'");
  return out;
}

inline Report to_report(const std::string& suite, const std::vector<Criterion>& criteria) {
  Report r;
  r.suite = suite;
  for (const auto& c : criteria)
    for (const auto& g : c.groups) r.append(g.entries);
  return r;
}

}  // namespace elemhyp::verify
