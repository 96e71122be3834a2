// Meyer-König and Zeller type operators: direct-summation oracles and the
// closed moment formulas built on 2F1 closed forms and the f_{n,j} kernels.
#pragma once

#include <cmath>
#include <string>

#include "elemhyp/basis.hpp"
#include "elemhyp/hypergeom.hpp"
#include "elemhyp/numcore.hpp"
#include "elemhyp/polylog.hpp"

namespace elemhyp {

/// Generalized MKZ operator M_{n,r}^{alpha,beta}. The classical operator is
/// (r, alpha, beta) = (1, 0, 0).
struct GmkzParams {
  int n = 1;
  int r = 1;
  double alpha = 0.0;
  double beta = 0.0;

  static GmkzParams classical(int n) { return {n, 1, 0.0, 0.0}; }

  void validate() const {
    if (n < 1) throw InvalidParams("gmkz: n must be >= 1");
    if (n + r < 1) throw InvalidParams("gmkz: n + r must be >= 1");
    if (!(alpha >= beta && beta >= 0.0)) throw InvalidParams("gmkz: need alpha >= beta >= 0");
  }
};

/// Test function e_r(t) = t^r.
struct Monomial {
  int r = 0;

  explicit Monomial(int exponent) : r(exponent) {
    if (exponent < 0) throw InvalidParams("monomial exponent must be >= 0");
  }
  double operator()(double t) const { return ipow(t, r); }
};

namespace detail {

inline void require_unit_interval(double x, const char* who) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError(std::string(who) + ": x must lie in [0, 1)");
}

inline void require_integer_alpha(double alpha) {
  if (!(alpha >= 0.0 && std::floor(alpha) == alpha))
    throw InvalidParams("alpha must be a nonnegative integer");
}

}  // namespace detail

/// (1-x)^{n+r} sum_k C(n+r+k-1, k) x^k f((k+beta)/(n+k+alpha)).
template <class F>
SeriesResult gmkz_apply(const GmkzParams& params, F&& f, double x, const EvalPolicy& policy = {}) {
  params.validate();
  detail::require_unit_interval(x, "gmkz_apply");
  const int nr = params.n + params.r;
  double w = std::pow(1.0 - x, nr);
  return sum_series(
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        const double t = (kd + params.beta) / (params.n + kd + params.alpha);
        const double term = w * f(t);
        w *= (nr + kd) / (kd + 1.0) * x;
        return term;
      },
      policy);
}

/// Second moment of the classical operator from its 2F1(1,2;n+2;x) form.
inline double mkz_moment_e2(int n, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("mkz_moment_e2: n must be >= 1");
  detail::require_unit_interval(x, "mkz_moment_e2");
  if (x == 0.0) return 0.0;
  const WideReal f = hyp2f1_eval({1, 2.0, n + 2}, x, policy);
  const WideReal xr(x);
  return static_cast<double>(xr * xr + xr * (1 - xr) * (1 - xr) / (n + 1) * f);
}

/// M_n e_r(x) = 1 + (1-x)^{n+1} sum_{j=1}^r C(r,j) (-n)^j f_{n,j}(x), with the
/// f_{n,j} taken from their elementary/polylog combinations.
template <class Real = WideReal>
double mkz_moment(int n, int r, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("mkz_moment: n must be >= 1");
  if (r < 0) throw InvalidParams("mkz_moment: r must be >= 0");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("mkz_moment: x must lie in (0, 1)");
  if (r == 0) return 1.0;
  const Real xr(x);
  CompensatedSum<Real> acc;
  for (int j = 1; j <= r; ++j)
    acc += binomial<Real>(r, j) * ipow(Real(-n), j) * fnj_value_t<Real>(n, j, xr, policy);
  return static_cast<double>(Real(1) + ipow(Real(1) - xr, n + 1) * acc.value());
}

/// L_n e_2 from its closed form x^2 + 2x(1-x)^2/(n+2) 2F1(1,3;n+3;x).
inline double ln_moment_e2(int n, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("ln_moment_e2: n must be >= 1");
  detail::require_unit_interval(x, "ln_moment_e2");
  if (x == 0.0) return 0.0;
  const WideReal f = hyp2f1_eval({1, 3.0, n + 3}, x, policy);
  const WideReal xr(x);
  return static_cast<double>(xr * xr + 2 * xr * (1 - xr) * (1 - xr) / (n + 2) * f);
}

/// Direct L_n(e_2; x) for the Durrmeyer-type operator with kernel
/// m_{n,k}(t) = C(n+k,k)(1-t)^{n+1} t^k and weights (n+k+1)(n+k+2)/(n+1).
/// The Beta integrals collapse to (k+1)(k+2)/((n+k+3)(n+k+4)).
inline SeriesResult ln_apply_e2(int n, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("ln_apply_e2: n must be >= 1");
  detail::require_unit_interval(x, "ln_apply_e2");
  double w = std::pow(1.0 - x, n + 1);
  return sum_series(
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        const double moment = (kd + 1.0) * (kd + 2.0) / ((n + kd + 3.0) * (n + kd + 4.0));
        const double term = w * moment;
        w *= (n + kd + 1.0) / (kd + 1.0) * x;
        return term;
      },
      policy);
}

/// M_{n,r}^{alpha,beta} e_1 via two 2F1(1, .; .; x) closed forms; alpha must
/// be a nonnegative integer.
inline double gmkz_e1(const GmkzParams& params, double x, const EvalPolicy& policy = {}) {
  params.validate();
  detail::require_integer_alpha(params.alpha);
  detail::require_unit_interval(x, "gmkz_e1");
  const int a = static_cast<int>(params.alpha);
  const int n = params.n;
  const double b = params.beta;
  const double f1 = hyp2f1_eval({1, static_cast<double>(a - params.r), n + 1 + a}, x, policy);
  const double f2 = hyp2f1_eval({1, static_cast<double>(a - params.r + 1), n + 2 + a}, x, policy);
  return b / (n + a) * f1 + (n + params.r - b) / (n + 1 + a) * x * f2;
}

/// M_{n,alpha+1}^{alpha,beta} e_m through derivatives of polylogarithms:
///   (1-x)^{d+1}/d! sum_j (-1)^j C(m,j) (d-beta)^j (Li_j)^{(d)}(x),  d = n+alpha.
/// The 1/d! is cancelled exactly against the factorials of the derivative
/// series before anything is rounded.
inline double gmkz_moment_abel(int n, int alpha, double beta, int m, double x,
                               const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("gmkz_moment_abel: n must be >= 1");
  if (alpha < 0) throw InvalidParams("gmkz_moment_abel: alpha must be >= 0");
  if (!(beta >= 0.0 && beta <= alpha)) throw InvalidParams("gmkz_moment_abel: need alpha >= beta >= 0");
  if (m < 0) throw InvalidParams("gmkz_moment_abel: m must be >= 0");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("gmkz_moment_abel: x must lie in (0, 1)");
  const int d = n + alpha;
  const double lead = std::pow(1.0 - x, d + 1);
  CompensatedSum<double> acc;
  acc += 1.0;  // j = 0: (Li_0)^{(d)}/d! = (1-x)^{-(d+1)}
  for (int j = 1; j <= m; ++j) {
    const auto s = detail::scaled_polylog_derivative(j, d, x, policy);
    if (!s.converged) throw NotConverged("gmkz_moment_abel: derivative series did not converge");
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial<double>(m, j) * std::pow(d - beta, j) * lead * s.value;
  }
  return acc.value();
}

}  // namespace elemhyp
