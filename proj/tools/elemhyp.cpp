// elemhyp: command-line front end. One JSON document (or CSV) on stdout,
// diagnostics on stderr; exit 0 ok, 1 failure / non-convergence, 2 bad input.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "elemhyp/elemhyp.hpp"

using namespace elemhyp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  double rel_tol = EvalPolicy{}.rel_tol;
  std::size_t max_terms = EvalPolicy{}.max_terms;

  EvalPolicy policy() const {
    EvalPolicy p;
    p.rel_tol = rel_tol;
    p.max_terms = max_terms;
    p.validate();
    return p;
  }
};

std::optional<double> parse_positive(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) return std::nullopt;
  return v;
}

void emit(const Json& j) { std::cout << dump_json(j) << '\n'; }

// -- hyp2f1 ---------------------------------------------------------------------

struct Hyp2f1Args {
  int m = 1;
  double n = 1.0;
  int p = 2;
  double x = 0.0;
  std::string method = "auto";
  std::string variant;
  bool compare = false;
};

int run_hyp2f1(const Hyp2f1Args& a, const EvalPolicy& policy) {
  const HypergeomParams params{a.m, a.n, a.p};
  params.validate();
  Json out{{"m", a.m}, {"n", a.n}, {"p", a.p}, {"x", a.x}};
  double value = 0.0;
  if (a.method == "series") {
    if (!a.variant.empty()) throw InvalidParams("--variant applies to --method closed only");
    const auto r = hyp2f1_series(a.m, a.n, a.p, a.x, policy);
    if (!r.converged) throw NotConverged("hyp2f1: series did not converge");
    value = r.value;
    out["method"] = "series";
  } else if (a.method == "auto") {
    if (!a.variant.empty()) throw InvalidParams("--variant applies to --method closed only");
    out["method"] = to_string(hyp2f1_select_method(params, a.x, policy));
    value = hyp2f1_eval(params, a.x, policy);
  } else {
    const bool n_int = std::floor(a.n) == a.n;
    const std::string& v = a.variant;
    if (a.m == 1 && a.n == 2.0 && a.p >= 3) {
      if (!(v.empty() || v == "1" || v == "2" || v == "3"))
        throw InvalidParams("--variant must be 1, 2 or 3 for 2F1(1, 2; p; x)");
      const int k = v.empty() ? 1 : std::stoi(v);
      value = hyp2f1_closed_12(a.p - 2, a.x, static_cast<Eq4Variant>(k));
      out["method"] = "12";
      out["variant"] = std::to_string(k);
    } else if (a.m == 1 && n_int && a.n >= 1.0 && a.p >= a.n + 1.0) {
      if (!(v.empty() || v == "A" || v == "B")) throw InvalidParams("--variant must be A or B here");
      const int mm = static_cast<int>(a.n);
      value = hyp2f1_closed_1m(mm, a.p - mm - 1, a.x, v == "B" ? Eq3Variant::B : Eq3Variant::A);
      out["method"] = "1m";
      out["variant"] = v.empty() ? "A" : v;
    } else {
      if (!v.empty()) throw InvalidParams("--variant does not apply to these parameters");
      value = a.m == 1 ? hyp2f1_closed_m1(a.n, a.p, a.x) : hyp2f1_closed_general(params, a.x);
      out["method"] = a.m == 1 ? "m1" : "general";
    }
  }
  out["value"] = value;
  if (a.compare) {
    const auto r = hyp2f1_series(a.m, a.n, a.p, a.x, policy.tightened_for<double>());
    if (!r.converged) throw NotConverged("hyp2f1: comparison series did not converge");
    out["series"] = r.value;
    out["rel_err"] = relative_error(value, r.value);
  }
  emit(out);
  return kExitOk;
}

// -- moment ---------------------------------------------------------------------

struct MomentArgs {
  std::string op = "mkz";
  int n = 1;
  int r = 0;
  double x = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<int> rop;
  std::string route = "closed";
};

double series_or_throw(const SeriesResult& r, const char* who) {
  if (!r.converged) throw NotConverged(std::string(who) + ": series did not converge");
  return r.value;
}

double moment_closed(const MomentArgs& a, const EvalPolicy& policy) {
  if (a.op == "mkz") {
    if (a.r == 0) return 1.0;
    if (a.r == 2) return mkz_moment_e2(a.n, a.x, policy);
    return mkz_moment(a.n, a.r, a.x, policy);
  }
  if (a.op == "ln") {
    if (a.r != 2) throw InvalidParams("moment: the ln operator has a closed form for r = 2 only");
    return ln_moment_e2(a.n, a.x, policy);
  }
  const GmkzParams gp{a.n, a.rop.value_or(1), a.alpha, a.beta};
  gp.validate();
  if (a.r == 1) return gmkz_e1(gp, a.x, policy);
  if (std::floor(a.alpha) == a.alpha && gp.r == static_cast<int>(a.alpha) + 1)
    return gmkz_moment_abel(a.n, static_cast<int>(a.alpha), a.beta, a.r, a.x, policy);
  throw InvalidParams("moment: gmkz closed route needs r = 1 or --rop = alpha + 1");
}

double moment_series(const MomentArgs& a, const EvalPolicy& policy) {
  if (a.op == "mkz") return series_or_throw(gmkz_apply(GmkzParams::classical(a.n), Monomial(a.r), a.x, policy), "moment");
  if (a.op == "ln") {
    if (a.r != 2) throw InvalidParams("moment: the ln series route is implemented for r = 2 only");
    return series_or_throw(ln_apply_e2(a.n, a.x, policy), "moment");
  }
  const GmkzParams gp{a.n, a.rop.value_or(1), a.alpha, a.beta};
  return series_or_throw(gmkz_apply(gp, Monomial(a.r), a.x, policy), "moment");
}

int run_moment(const MomentArgs& a, const EvalPolicy& policy) {
  if (a.op != "gmkz" && (a.rop || a.alpha != 0.0 || a.beta != 0.0))
    throw InvalidParams("--alpha, --beta and --rop apply to --operator gmkz only");
  if (a.r < 0) throw InvalidParams("moment: r must be >= 0");
  Json out{{"operator", a.op}, {"n", a.n}, {"r", a.r}, {"x", a.x}};
  if (a.op == "gmkz") {
    out["rop"] = a.rop.value_or(1);
    out["alpha"] = a.alpha;
    out["beta"] = a.beta;
  }
  out["route"] = a.route;
  if (a.route == "closed") {
    out["value"] = moment_closed(a, policy);
  } else if (a.route == "series") {
    out["value"] = moment_series(a, policy);
  } else {
    const double c = moment_closed(a, policy);
    const double s = moment_series(a, policy.tightened_for<double>());
    out["value"] = c;
    out["closed"] = c;
    out["series"] = s;
    out["rel_err"] = relative_error(c, s);
  }
  emit(out);
  return kExitOk;
}

// -- fnj ------------------------------------------------------------------------

struct FnjArgs {
  int n = 2;
  int j = 2;
  std::optional<double> x;
  bool emit_symbolic = false;
};

int run_fnj(const FnjArgs& a, const EvalPolicy& policy) {
  if (!a.x && !a.emit_symbolic) throw InvalidParams("fnj: give --x and/or --emit-symbolic");
  if (a.n < 2) throw InvalidParams("fnj: combos are defined for n >= 2");
  if (a.j < 0) throw InvalidParams("fnj: j must be >= 0");
  Json out;
  if (a.emit_symbolic) {
    out = combo_to_json(fnj_combo(a.n, a.j));
  } else {
    out = Json{{"n", a.n}, {"j", a.j}};
  }
  if (a.x) {
    const double x = *a.x;
    if (!(x > 0.0 && x < 1.0)) throw DomainError("fnj: x must lie in (0, 1)");
    const double combo = a.j >= 2 ? combo_eval(fnj_combo(a.n, a.j), x, policy) : fnj_base(a.n, a.j)(x);
    const double series =
        series_or_throw(fnj_series(a.n, a.j, x, policy.tightened_for<double>()), "fnj");
    out["x"] = x;
    out["combo"] = combo;
    out["series"] = series;
    out["rel_err"] = relative_error(combo, series);
  }
  emit(out);
  return kExitOk;
}

// -- heun -----------------------------------------------------------------------

struct HeunArgs {
  int m = 1;
  double n = 1.0;
  int p = 2;
  double x = 0.0;
  int terms = 40;
  bool normalized = false;
  bool check_ode = false;
};

int run_heun(const HeunArgs& a, const EvalPolicy& policy) {
  const HeunFamilyParams fp{a.m, a.n, a.p};
  fp.validate();
  const auto r = heun_eval(fp, a.x, a.terms, policy);
  const double norm = heun_normalization(fp, policy);
  const auto term = heun_termination(fp);
  Json out{{"m", a.m}, {"n", a.n}, {"p", a.p}, {"x", a.x}, {"terms", a.terms}};
  out["value"] = a.normalized ? r.value / norm : r.value;
  out["normalized"] = a.normalized;
  out["termination"] = term ? Json(*term) : Json(nullptr);
  out["normalization"] = norm;
  out["converged"] = r.converged;
  if (a.check_ode) {
    const auto res = heun_ode_residual(fp, a.x, 1e-4, a.terms, policy);
    out["residual"] = res.relative();
    out["residual_abs"] = res.residual;
    out["residual_scale"] = res.scale;
  }
  emit(out);
  return kExitOk;
}

// -- verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string format = "json";
  std::string out_path;
};

int run_verify(const VerifyArgs& a, const EvalPolicy& policy) {
  const auto criteria = verify::run_suite(a.suite, policy);
  const Report report = verify::to_report(a.suite, criteria);
  std::ostringstream text;
  if (a.format == "csv")
    write_csv(text, report);
  else
    text << dump_json(to_json(report)) << '\n';
  if (a.out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(a.out_path);
    if (!f) throw InvalidParams("verify: cannot open " + a.out_path);
    f << text.str();
  }
  const auto s = report.summary();
  std::cerr << "verify " << a.suite << ": " << s.passed << "/" << s.total << " passed, max rel_err "
            << format_real(s.max_rel_err) << '\n';
  for (const auto& c : criteria)
    for (const auto& g : c.groups)
      if (!g.pass()) std::cerr << "  failing group: " << g.name << '\n';
  return report.all_pass() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elementary representations of hypergeometric, MKZ and Heun functions"};
  app.require_subcommand(1);
  Globals g;
  auto* rel_tol = app.add_option("--rel-tol", g.rel_tol, "Relative series tolerance (env ELEMHYP_REL_TOL)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--max-terms", g.max_terms, "Series term cap")->check(CLI::PositiveNumber);

  Hyp2f1Args h;
  auto* hyp = app.add_subcommand("hyp2f1", "Evaluate 2F1(m, n; p; x)");
  hyp->add_option("--m", h.m)->required();
  hyp->add_option("--n", h.n)->required();
  hyp->add_option("--p", h.p)->required();
  hyp->add_option("--x", h.x)->required();
  hyp->add_option("--method", h.method)->check(CLI::IsMember({"series", "closed", "auto"}));
  hyp->add_option("--variant", h.variant)->check(CLI::IsMember({"A", "B", "1", "2", "3"}));
  hyp->add_flag("--compare", h.compare, "Also print the series value and relative error");

  MomentArgs mo;
  auto* mom = app.add_subcommand("moment", "Moments of MKZ-type operators");
  mom->add_option("--operator", mo.op)->check(CLI::IsMember({"mkz", "ln", "gmkz"}));
  mom->add_option("--n", mo.n)->required();
  mom->add_option("--r", mo.r)->required();
  mom->add_option("--x", mo.x)->required();
  mom->add_option("--alpha", mo.alpha);
  mom->add_option("--beta", mo.beta);
  mom->add_option("--rop", mo.rop, "Operator parameter r of the generalized operator");
  mom->add_option("--route", mo.route)->check(CLI::IsMember({"closed", "series", "both"}));

  FnjArgs fa;
  auto* fnj = app.add_subcommand("fnj", "Kernel series f_{n,j} and its symbolic form");
  fnj->add_option("--n", fa.n)->required();
  fnj->add_option("--j", fa.j)->required();
  fnj->add_option("--x", fa.x);
  fnj->add_flag("--emit-symbolic", fa.emit_symbolic);

  HeunArgs ha;
  auto* heun = app.add_subcommand("heun", "Heun family solution from its 2F1 expansion");
  heun->add_option("--m", ha.m)->required();
  heun->add_option("--n", ha.n)->required();
  heun->add_option("--p", ha.p)->required();
  heun->add_option("--x", ha.x)->required();
  heun->add_option("--terms", ha.terms, "Base truncation K")->check(CLI::PositiveNumber);
  heun->add_flag("--normalized", ha.normalized, "Divide by u(0)");
  heun->add_flag("--check-ode", ha.check_ode, "Report the ODE residual");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", va.suite)->check(CLI::IsMember(verify::suite_names()));
  ver->add_option("--format", va.format)->check(CLI::IsMember({"json", "csv"}));
  ver->add_option("--out", va.out_path);

  for (auto* sub : {hyp, mom, fnj, heun, ver}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (rel_tol->count() == 0) {
    if (const char* env = std::getenv("ELEMHYP_REL_TOL")) {
      const auto v = parse_positive(env);
      if (!v) {
        std::cerr << "error: ELEMHYP_REL_TOL must be a positive decimal number\n";
        return kExitUsage;
      }
      g.rel_tol = *v;
    }
  }

  try {
    const EvalPolicy policy = g.policy();
    if (*hyp) return run_hyp2f1(h, policy);
    if (*mom) return run_moment(mo, policy);
    if (*fnj) return run_fnj(fa, policy);
    if (*heun) return run_heun(ha, policy);
    if (*ver) return run_verify(va, policy);
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
