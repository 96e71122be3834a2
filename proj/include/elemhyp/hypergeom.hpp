// Gauss 2F1 with integer parameters: the defining series (used as oracle)
// and elementary closed forms built from logs and powers of (1-x).
#pragma once

#include <cmath>
#include <string>

#include "elemhyp/numcore.hpp"

namespace elemhyp {

/// Parameters of 2F1(m, n; p; x): m >= 1 and p >= m+1 integers, n real.
struct HypergeomParams {
  int m = 1;
  double n = 1.0;
  int p = 2;

  void validate() const {
    if (m < 1) throw InvalidParams("2F1: m must be a positive integer");
    if (p < m + 1) throw InvalidParams("2F1: p must satisfy p >= m + 1");
    if (!std::isfinite(n)) throw InvalidParams("2F1: n must be finite");
  }
};

enum class Eq3Variant { A, B };
enum class Eq4Variant { One = 1, Two = 2, Three = 3 };

enum class Hyp2f1Method { Unit, Series, General, FirstParamOne, OneM, OneTwo };

inline const char* to_string(Hyp2f1Method m) {
  switch (m) {
    case Hyp2f1Method::Unit: return "unit";
    case Hyp2f1Method::Series: return "series";
    case Hyp2f1Method::General: return "general";
    case Hyp2f1Method::FirstParamOne: return "m1";
    case Hyp2f1Method::OneM: return "1m";
    case Hyp2f1Method::OneTwo: return "12";
  }
  return "?";
}

namespace detail {

template <class Real>
void require_open_unit(const Real& x, const char* who) {
  if (!(x > Real(0) && x < Real(1)))
    throw DomainError(std::string(who) + ": x must lie in (0, 1)");
}

template <class Real>
Real sign_pow(long long e) {
  return (e % 2 == 0) ? Real(1) : Real(-1);
}

// Triple sum of the general closed form for 2F1(m, n; p; x).
template <class Real>
Real closed_general(int m, const Real& n, int p, const Real& x) {
  const int d = p - m - 1;  // degree of (x-t)^{p-m-1}
  CompensatedSum<Real> outer;
  for (int k = 0; k <= m - 1; ++k) {
    CompensatedSum<Real> middle;
    for (int j = 0; j <= d; ++j) {
      CompensatedSum<Real> inner;
      for (int i = 0; i <= j; ++i) {
        inner += sign_pow<Real>(i) * binomial<Real>(j, i) *
                 power_integral<Real>(Real(i + k) - n, x);
      }
      middle += sign_pow<Real>(j) * binomial<Real>(d, j) * ipow(x, d - j) * inner.value();
    }
    outer += sign_pow<Real>(k) * binomial<Real>(m - 1, k) * middle.value();
  }
  const Real pre = pochhammer<Real>(Real(m), p - m) * ipow(x, 1 - p) / factorial<Real>(d);
  return pre * outer.value();
}

template <class Real>
Real closed_m1(const Real& n, int p, const Real& x) {
  CompensatedSum<Real> acc;
  const Real xm1 = x - Real(1);
  for (int i = 0; i <= p - 2; ++i)
    acc += binomial<Real>(p - 2, i) * ipow(xm1, p - 2 - i) * power_integral<Real>(Real(i) - n, x);
  return Real(p - 1) * ipow(x, 1 - p) * acc.value();
}

template <class Real>
Real closed_1m_log_part(int m, int l, const Real& x) {
  using std::log1p;
  return pochhammer<Real>(Real(m), l + 1) * ipow(x, -(m + l)) * sign_pow<Real>(l + 1) /
         factorial<Real>(l) * ipow(Real(1) - x, l) * log1p(-x);
}

template <class Real>
Real closed_1m_a(int m, int l, const Real& x) {
  const Real y = Real(1) - x;
  const Real yl = ipow(y, l);
  const int top = m + l - 1;
  CompensatedSum<Real> acc;
  for (int i = 0; i <= top; ++i) {
    if (i == m - 1) continue;  // zero denominator, excluded exactly
    acc += binomial<Real>(top, i) * sign_pow<Real>(top - i) / Real(i - m + 1) *
           (ipow(y, top - i) - yl);
  }
  return closed_1m_log_part<Real>(m, l, x) + Real(m + l) * ipow(x, -(m + l)) * acc.value();
}

template <class Real>
Real closed_1m_b(int m, int l, const Real& x) {
  // Taylor part of (1-x)^l log(1-x)
  CompensatedSum<Real> q;
  for (int j = 1; j <= l; ++j) {
    CompensatedSum<Real> c;
    for (int i = 0; i <= j - 1; ++i)
      c += sign_pow<Real>(i) / Real(j - i) * binomial<Real>(l, i);
    q += ipow(x, j) * c.value();
  }
  CompensatedSum<Real> tail;
  for (int i = 0; i <= m - 2; ++i)
    tail += ipow(x, l + i + 1) / pochhammer<Real>(Real(i + 1), l + 1);
  const Real brace = sign_pow<Real>(l + 1) / factorial<Real>(l) * q.value() - tail.value();
  return closed_1m_log_part<Real>(m, l, x) +
         pochhammer<Real>(Real(m), l + 1) * ipow(x, -(m + l)) * brace;
}

template <class Real>
Real closed_12(int n, const Real& x, Eq4Variant variant) {
  using std::log1p;
  const Real y = Real(1) - x;
  const Real lg = log1p(-x);
  const Real sgn = sign_pow<Real>(n);
  switch (variant) {
    case Eq4Variant::One: {
      CompensatedSum<Real> s;
      for (int j = 1; j <= n - 1; ++j)
        s += sign_pow<Real>(j) * Real(n - j) / Real(j) * ipow(x, j) * ipow(y, n - j - 1);
      const Real brace = ipow(y, n - 1) * (x + Real(n) * lg) - s.value();
      return sgn * Real(n + 1) * ipow(x, -(n + 1)) * brace;
    }
    case Eq4Variant::Two: {
      CompensatedSum<Real> s;
      const Real yn1 = ipow(y, n - 1);
      for (int i = 2; i <= n; ++i)
        s += sign_pow<Real>(i) / Real(i - 1) * binomial<Real>(n, i) * (ipow(y, n - i) - yn1);
      const Real brace = yn1 * (x + Real(n) * lg) + s.value();
      return sgn * Real(n + 1) * ipow(x, -(n + 1)) * brace;
    }
    case Eq4Variant::Three: {
      CompensatedSum<Real> s;
      for (int j = 1; j <= n - 1; ++j) {
        CompensatedSum<Real> c;
        for (int i = 0; i <= j - 1; ++i)
          c += sign_pow<Real>(i) / Real(j - i) * binomial<Real>(n - 1, i);
        s += ipow(x, j) * c.value();
      }
      const Real brace = ipow(y, n - 1) * lg + s.value();
      return sgn * Real(n) * Real(n + 1) * ipow(x, -(n + 1)) * brace - Real(n + 1) / x;
    }
  }
  throw InvalidParams("closed_12: unknown variant");
}

}  // namespace detail

// -- oracle -------------------------------------------------------------------

/// Term-by-term sum of the defining series, ratio recurrence
/// t_{j+1} = t_j (a+j)(b+j) x / ((c+j)(j+1)).
inline SeriesResult hyp2f1_series(double a, double b, double c, double x,
                                  const EvalPolicy& policy = {}) {
  if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1_series: |x| must be < 1");
  if (is_nonpositive_integer(c))
    throw DomainError("hyp2f1_series: c must not be zero or a negative integer");
  double t = 1.0;
  return sum_series(
      [&](std::size_t j) {
        const double current = t;
        const double jd = static_cast<double>(j);
        t = t * (a + jd) * (b + jd) * x / ((c + jd) * (jd + 1.0));
        return current;
      },
      policy);
}

// -- closed forms ---------------------------------------------------------------
// Real is the working precision; results are rounded to double.

/// General (m, n, p) closed form: triple sum whose innermost integrals of
/// s^{i+k-n} over [1-x, 1] are elementary.
template <class Real = WideReal>
double hyp2f1_closed_general(const HypergeomParams& params, double x) {
  params.validate();
  detail::require_open_unit(x, "hyp2f1_closed_general");
  return static_cast<double>(
      detail::closed_general<Real>(params.m, Real(params.n), params.p, Real(x)));
}

/// 2F1(1, n; p; x) for p >= 2.
template <class Real = WideReal>
double hyp2f1_closed_m1(double n, int p, double x) {
  if (p < 2) throw InvalidParams("hyp2f1_closed_m1: p must be >= 2");
  detail::require_open_unit(x, "hyp2f1_closed_m1");
  return static_cast<double>(detail::closed_m1<Real>(Real(n), p, Real(x)));
}

/// 2F1(1, m; m+l+1; x), m >= 1, l >= 0. Variant A sums binomial differences
/// of powers of (1-x); variant B subtracts the Taylor polynomial of the log term.
template <class Real = WideReal>
double hyp2f1_closed_1m(int m, int l, double x, Eq3Variant variant = Eq3Variant::A) {
  if (m < 1 || l < 0) throw InvalidParams("hyp2f1_closed_1m: need m >= 1, l >= 0");
  detail::require_open_unit(x, "hyp2f1_closed_1m");
  const Real xr(x);
  return static_cast<double>(variant == Eq3Variant::A ? detail::closed_1m_a<Real>(m, l, xr)
                                                      : detail::closed_1m_b<Real>(m, l, xr));
}

/// 2F1(1, 2; n+2; x), n >= 1, in three equivalent expressions.
template <class Real = WideReal>
double hyp2f1_closed_12(int n, double x, Eq4Variant variant = Eq4Variant::One) {
  if (n < 1) throw InvalidParams("hyp2f1_closed_12: n must be >= 1");
  detail::require_open_unit(x, "hyp2f1_closed_12");
  return static_cast<double>(detail::closed_12<Real>(n, Real(x), variant));
}

// -- dispatcher -----------------------------------------------------------------

/// Closed forms are used only while their estimated cancellation stays
/// within this many digits of WideReal.
inline constexpr double kClosedFormDigitBudget = 19.0;

inline Hyp2f1Method hyp2f1_select_method(const HypergeomParams& params, double x,
                                         const EvalPolicy& policy = {}) {
  params.validate();
  policy.validate();
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("hyp2f1_eval: x must lie in [0, 1)");
  if (x == 0.0) return Hyp2f1Method::Unit;
  if (x < policy.x_switch) return Hyp2f1Method::Series;
  // Binomial expansions cancel roughly (p-1)(log10(1/x) + c) digits, with the
  // growth constant c measured at about 0.2 for m = 1 and 0.5 otherwise.
  const double growth = params.m == 1 ? 0.25 : 0.5;
  if ((params.p - 1) * (std::log10(1.0 / x) + growth) > kClosedFormDigitBudget)
    return Hyp2f1Method::Series;
  if (params.m == 1) {
    const bool n_int = std::floor(params.n) == params.n;
    if (n_int && params.n == 2.0 && params.p >= 3) return Hyp2f1Method::OneTwo;
    if (n_int && params.n >= 1.0 && params.p >= params.n + 1.0) return Hyp2f1Method::OneM;
    return Hyp2f1Method::FirstParamOne;
  }
  return Hyp2f1Method::General;
}

/// Stability-aware evaluation of 2F1(m, n; p; x) on [0, 1): series below
/// policy.x_switch, otherwise the most specific closed form.
inline double hyp2f1_eval(const HypergeomParams& params, double x, const EvalPolicy& policy = {}) {
  switch (hyp2f1_select_method(params, x, policy)) {
    case Hyp2f1Method::Unit:
      return 1.0;
    case Hyp2f1Method::Series: {
      const auto r = hyp2f1_series(params.m, params.n, params.p, x, policy);
      if (!r.converged) throw NotConverged("hyp2f1_eval: series did not converge");
      return r.value;
    }
    case Hyp2f1Method::OneTwo:
      return hyp2f1_closed_12(params.p - 2, x, Eq4Variant::One);
    case Hyp2f1Method::OneM: {
      const int mm = static_cast<int>(params.n);
      return hyp2f1_closed_1m(mm, params.p - mm - 1, x, Eq3Variant::A);
    }
    case Hyp2f1Method::FirstParamOne:
      return hyp2f1_closed_m1(params.n, params.p, x);
    case Hyp2f1Method::General:
      return hyp2f1_closed_general(params, x);
  }
  throw InvalidParams("hyp2f1_eval: unreachable");
}

}  // namespace elemhyp
