// A family of Heun equations whose solutions expand in elementary 2F1
// functions, with finite-sum detection and an independent power-series check.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "elemhyp/hypergeom.hpp"
#include "elemhyp/numcore.hpp"

namespace elemhyp {

/// u'' + (gamma/x + delta/(x-1) + epsilon/(x-a)) u'
///     + (alpha beta x - q) / (x (x-1) (x-a)) u = 0
struct HeunSpec {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double a = 0.5;
  double q = 0.0;

  /// alpha + beta + 1 - (gamma + delta + epsilon); zero for a Heun equation.
  double fuchs_defect() const { return alpha + beta + 1.0 - (gamma + delta + epsilon); }

  void validate() const {
    if (a == 0.0 || a == 1.0) throw InvalidParams("HeunSpec: a must differ from 0 and 1");
    const double scale = std::abs(alpha) + std::abs(beta) + 1.0 + std::abs(gamma) +
                         std::abs(delta) + std::abs(epsilon);
    if (std::abs(fuchs_defect()) > 1e-12 * scale)
      throw InvalidParams("HeunSpec: alpha + beta + 1 must equal gamma + delta + epsilon");
  }
};

/// (m, n, p) selecting the elementary Heun family: m >= 1, p >= m+1, n != 0.
struct HeunFamilyParams {
  int m = 1;
  double n = 1.0;
  int p = 2;

  void validate() const {
    if (m < 1) throw InvalidParams("Heun family: m must be >= 1");
    if (p < m + 1) throw InvalidParams("Heun family: p must be >= m + 1");
    if (n == 0.0 || !std::isfinite(n)) throw InvalidParams("Heun family: n must be finite and nonzero");
  }

  // Pochhammer bases of the expansion coefficients.
  double top_a() const { return (m + n - 1.0) / 2.0; }
  double top_b() const { return (p - m) / 2.0; }
  double top_c() const { return (p - n) / 2.0; }
  double bottom_d() const { return p / 2.0; }
  double bottom_e() const { return (p + 1.0) / 2.0; }
};

inline HeunSpec heun_params_from(const HeunFamilyParams& fp) {
  fp.validate();
  const double m = fp.m;
  const double n = fp.n;
  const double p = fp.p;
  HeunSpec s;
  s.alpha = m;
  s.beta = n;
  s.gamma = p + 1.0 - m - n;
  s.delta = m + n - p + 1.0;
  s.epsilon = m + n - 1.0;
  s.a = 0.5;
  s.q = 0.5 * (m * n - (m + n - p) * (m + n - 1.0));
  return s;
}

/// Smallest r >= 1 with m+n = 3-2r or n-p = 2r-2 (integer match to 1e-12).
inline std::optional<int> heun_termination(const HeunFamilyParams& fp) {
  fp.validate();
  constexpr double kTol = 1e-12;
  std::optional<int> best;
  auto consider = [&](double candidate) {
    const double rounded = std::round(candidate);
    if (std::abs(candidate - rounded) <= kTol && rounded >= 1.0) {
      const int r = static_cast<int>(rounded);
      if (!best || r < *best) best = r;
    }
  };
  consider((3.0 - fp.m - fp.n) / 2.0);
  consider((fp.n - fp.p + 2.0) / 2.0);
  return best;
}

namespace detail {

template <class Real>
Real heun_coeff_ratio(const HeunFamilyParams& fp, int k) {
  // c_{k+1} / c_k
  const Real kk(k);
  return (Real(fp.top_a()) + kk) * (Real(fp.top_b()) + kk) * (Real(fp.top_c()) + kk) /
         ((kk + Real(1)) * (Real(fp.bottom_d()) + kk) * (Real(fp.bottom_e()) + kk));
}

// Richardson extrapolation of partial sums taken at K, 2K, ..., 2^levels K,
// assuming the tail expands in integer powers of 1/K.
template <class Real, class Term>
BasicSeriesResult<Real> richardson_sum(Term&& term, int base, int levels) {
  using std::abs;
  std::vector<Real> partials;
  CompensatedSum<Real> acc;
  std::size_t next = static_cast<std::size_t>(base);
  const std::size_t total = static_cast<std::size_t>(base) << levels;
  for (std::size_t k = 0; k < total; ++k) {
    acc += term(k);
    if (k + 1 == next) {
      partials.push_back(acc.value());
      next *= 2;
    }
  }
  std::vector<std::vector<Real>> table(partials.size());
  for (std::size_t i = 0; i < partials.size(); ++i) {
    table[i].push_back(partials[i]);
    for (std::size_t j = 1; j <= i; ++j) {
      const Real factor = Real(std::ldexp(1.0, static_cast<int>(j)) - 1.0);
      table[i].push_back(table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor);
    }
  }
  BasicSeriesResult<Real> out;
  const auto& last = table.back();
  out.value = last.back();
  out.terms_used = total;
  out.trunc_err_est = last.size() > 1 ? abs(last.back() - last[last.size() - 2]) : abs(partials.back());
  return out;
}

inline int richardson_levels(int base, std::size_t max_terms, int wanted) {
  int levels = 0;
  while (levels < wanted && (static_cast<std::size_t>(base) << (levels + 1)) <= max_terms) ++levels;
  return levels;
}

}  // namespace detail

/// Coefficient c_k of 2F1(m, n; p+2k; x) in the expansion of u(x).
inline double heun_coeff(const HeunFamilyParams& fp, int k) {
  fp.validate();
  if (k < 0) throw InvalidParams("heun_coeff: k must be >= 0");
  if (const auto r = heun_termination(fp); r && k >= *r) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= detail::heun_coeff_ratio<double>(fp, i);
  return c;
}

/// Plain truncation sum_{k<K} c_k 2F1(m, n; p+2k; x).
inline double heun_partial_sum(const HeunFamilyParams& fp, double x, int K,
                               const EvalPolicy& policy = {}) {
  fp.validate();
  if (K < 1) throw InvalidParams("heun: K must be >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("heun: x must lie in [0, 1)");
  const auto r = heun_termination(fp);
  const int stop = r ? std::min(K, *r) : K;
  CompensatedSum<double> acc;
  double c = 1.0;
  for (int k = 0; k < stop; ++k) {
    acc += c * hyp2f1_eval({fp.m, fp.n, fp.p + 2 * k}, x, policy);
    c *= detail::heun_coeff_ratio<double>(fp, k);
  }
  return acc.value();
}

/// Number of doublings used when extrapolating the infinite expansion.
inline constexpr int kHeunRichardsonLevels = 6;

/// u(x) from the 2F1 expansion. Finite sums are exact once K reaches the
/// termination index; otherwise partial sums at K, 2K, ..., 64K are
/// Richardson-extrapolated (the terms decay like k^-2).
inline SeriesResult heun_eval(const HeunFamilyParams& fp, double x, int K,
                              const EvalPolicy& policy = {}) {
  fp.validate();
  policy.validate();
  if (K < 1) throw InvalidParams("heun: K must be >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("heun: x must lie in [0, 1)");

  if (const auto r = heun_termination(fp)) {
    SeriesResult out;
    const int used = std::min(K, *r);
    out.value = heun_partial_sum(fp, x, used, policy);
    out.terms_used = static_cast<std::size_t>(used);
    out.converged = *r <= K;
    if (!out.converged)
      out.trunc_err_est = std::abs(heun_coeff(fp, used) * hyp2f1_eval({fp.m, fp.n, fp.p + 2 * used}, x, policy));
    return out;
  }

  const int levels = detail::richardson_levels(K, policy.max_terms, kHeunRichardsonLevels);
  double c = 1.0;
  auto term = [&](std::size_t k) {
    const int kk = static_cast<int>(k);
    const double t = c * hyp2f1_eval({fp.m, fp.n, fp.p + 2 * kk}, x, policy);
    c *= detail::heun_coeff_ratio<double>(fp, kk);
    return t;
  };
  auto out = detail::richardson_sum<double>(term, K, levels);
  out.converged = levels >= 2 && out.trunc_err_est <= policy.rel_tol * std::abs(out.value);
  return out;
}

/// u(0) = 3F2((p-m)/2, (p-n)/2, (m+n-1)/2; p/2, (p+1)/2; 1).
inline double heun_normalization(const HeunFamilyParams& fp, const EvalPolicy& policy = {}) {
  fp.validate();
  policy.validate();
  if (const auto r = heun_termination(fp)) {
    CompensatedSum<double> acc;
    double c = 1.0;
    for (int k = 0; k < *r; ++k) {
      acc += c;
      c *= detail::heun_coeff_ratio<double>(fp, k);
    }
    return acc.value();
  }
  constexpr int kBase = 64;
  const int levels = detail::richardson_levels(kBase, policy.max_terms, 10);
  WideReal c(1);
  auto term = [&](std::size_t k) {
    const WideReal t = c;
    c *= detail::heun_coeff_ratio<WideReal>(fp, static_cast<int>(k));
    return t;
  };
  const auto out = detail::richardson_sum<WideReal>(term, kBase, levels);
  const double value = static_cast<double>(out.value);
  if (!(static_cast<double>(out.trunc_err_est) <= policy.rel_tol * std::abs(value)))
    throw NotConverged("heun_normalization: unit-argument 3F2 did not converge");
  return value;
}

/// Power series of the solution analytic at 0 with u(0) = 1, coefficients
/// from the three-term recurrence
///   a (j+1)(j+gamma) d_{j+1} = [j((j-1+gamma)(1+a) + a delta + epsilon) + q] d_j
///                              - (j-1+alpha)(j-1+beta) d_{j-1}.
/// When gamma is a nonpositive integer the coefficient of d_{1-gamma} vanishes;
/// the equation must then be consistent and d_{1-gamma} is taken from
/// `resonant_coeff`.
template <class Real>
Real heun_series_oracle_t(const HeunSpec& spec, const Real& x, int N,
                          std::optional<Real> resonant_coeff = std::nullopt) {
  using std::abs;
  spec.validate();
  if (N < 2) throw InvalidParams("heun_series_oracle: N must be >= 2");
  if (!(abs(x) < Real(std::min(1.0, std::abs(spec.a)))))
    throw DomainError("heun_series_oracle: |x| must be below min(1, |a|)");
  const Real a(spec.a);
  Real prev(0);  // d_{j-1}
  Real cur(1);   // d_j
  Real xp(1);
  CompensatedSum<Real> acc;
  acc += Real(1);
  for (int j = 0; j < N; ++j) {
    const Real jd(j);
    const Real mid = jd * ((jd - 1 + Real(spec.gamma)) * (1 + a) + a * Real(spec.delta) + Real(spec.epsilon)) +
                     Real(spec.q);
    const Real low = (jd - 1 + Real(spec.alpha)) * (jd - 1 + Real(spec.beta));
    const Real rhs = mid * cur - low * prev;
    Real next;
    if (std::abs(j + spec.gamma) < 1e-12) {
      const Real scale = abs(mid * cur) + abs(low * prev) + Real(1e-300);
      if (abs(rhs) > Real(1e-9) * scale)
        throw DomainError("heun_series_oracle: logarithmic case, no second analytic solution");
      if (!resonant_coeff)
        throw InvalidParams("heun_series_oracle: resonant index needs an explicit coefficient");
      next = *resonant_coeff;
    } else {
      next = rhs / (a * (jd + 1) * (jd + Real(spec.gamma)));
    }
    prev = cur;
    cur = next;
    xp *= x;
    acc += cur * xp;
  }
  return acc.value();
}

/// Double-valued front end; the recurrence runs in WideReal because the
/// analytic solution is often the minimal one near x = a, where rounding
/// in a forward recurrence feeds the dominant solution.
inline double heun_series_oracle(const HeunSpec& spec, double x, int N,
                                 std::optional<double> resonant_coeff = std::nullopt) {
  std::optional<WideReal> rc;
  if (resonant_coeff) rc = WideReal(*resonant_coeff);
  return static_cast<double>(heun_series_oracle_t<WideReal>(spec, WideReal(x), N, rc));
}

/// Index of the resonant Frobenius coefficient, if gamma is a nonpositive integer.
inline std::optional<int> heun_resonant_index(const HeunSpec& spec) {
  const double g = std::round(spec.gamma);
  if (std::abs(spec.gamma - g) < 1e-12 && g <= 0.0) return static_cast<int>(1.0 - g);
  return std::nullopt;
}

struct OdeResidual {
  double residual = 0.0;  // left side of the Heun equation
  double scale = 0.0;     // |u''| + |P u'| + |Q u|
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// Plugs heun_eval into the equation using 5-point central differences.
inline OdeResidual heun_ode_residual(const HeunFamilyParams& fp, double x, double h, int K,
                                     const EvalPolicy& policy = {}) {
  const HeunSpec s = heun_params_from(fp);
  if (!(h >= 1e-5 && h <= 1e-3)) throw DomainError("heun_ode_residual: h must lie in [1e-5, 1e-3]");
  if (!(x > 2.0 * h && x < s.a - 2.0 * h))
    throw DomainError("heun_ode_residual: x must lie in (2h, a - 2h), away from singular points");
  auto u = [&](double t) { return heun_eval(fp, t, K, policy).value; };
  const double um2 = u(x - 2 * h), um1 = u(x - h), u0 = u(x), up1 = u(x + h), up2 = u(x + 2 * h);
  const double d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
  const double d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
  const double P = s.gamma / x + s.delta / (x - 1.0) + s.epsilon / (x - s.a);
  const double Q = (s.alpha * s.beta * x - s.q) / (x * (x - 1.0) * (x - s.a));
  OdeResidual out;
  out.residual = d2 + P * d1 + Q * u0;
  out.scale = std::abs(d2) + std::abs(P * d1) + std::abs(Q * u0);
  return out;
}

}  // namespace elemhyp
