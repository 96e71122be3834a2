// Polylogarithms Li_k on the real unit interval and derivatives of Li_j.
#pragma once

#include <cmath>

#include "elemhyp/numcore.hpp"

namespace elemhyp {

/// Order k >= 1 of Li_k; Li_1(x) = -log(1-x).
struct PolylogOrder {
  int k = 2;

  explicit PolylogOrder(int order) : k(order) {
    if (order < 1) throw InvalidParams("polylog order must be >= 1");
  }
};

template <class Real = double>
Real polylog_t(PolylogOrder order, const Real& x, const EvalPolicy& policy = {}) {
  using std::abs;
  using std::log1p;
  const int k = order.k;
  if (k == 1) {
    if (!(abs(x) <= Real(1) - Real(1e-6))) throw DomainError("polylog: Li_1 needs |x| < 1");
    return -log1p(-x);
  }
  if (x == Real(1)) {
    // zeta(k): direct sum plus the midpoint integral of t^{-k} past the cap
    const std::size_t cap = policy.max_terms;
    CompensatedSum<Real> acc;
    for (std::size_t j = cap; j >= 1; --j) acc += Real(1) / ipow(Real(j), k);
    const Real start = Real(cap) + Real(0.5);
    acc += ipow(start, 1 - k) / Real(k - 1);
    return acc.value();
  }
  if (!(abs(x) <= Real(1) - Real(1e-6)))
    throw DomainError("polylog: x outside [-1+1e-6, 1-1e-6] (or x = 1 for k >= 2)");
  if (x == Real(0)) return Real(0);
  Real xp(1);
  const auto r = sum_series(
      [&](std::size_t i) {
        xp *= x;
        return xp / ipow(Real(i + 1), k);
      },
      policy);
  if (!r.converged) throw NotConverged("polylog: series did not converge");
  return r.value;
}

/// Li_k(x) in double.
inline double polylog(PolylogOrder order, double x, const EvalPolicy& policy = {}) {
  return polylog_t<double>(order, x, policy);
}

namespace detail {

// sum_k C(k+d, k) x^k / (k+d)^j, i.e. (Li_j)^{(d)}(x) / d!
inline SeriesResult scaled_polylog_derivative(int j, int d, double x, const EvalPolicy& policy) {
  double t = 1.0 / std::pow(static_cast<double>(d), j);
  return sum_series(
      [&](std::size_t k) {
        const double current = t;
        const double kd = static_cast<double>(k);
        t *= (kd + d + 1.0) / (kd + 1.0) * x * std::pow((kd + d) / (kd + d + 1.0), j);
        return current;
      },
      policy);
}

}  // namespace detail

/// d-th derivative of Li_j at x, from the termwise-differentiated series
/// sum_k (k+d)!/k! x^k / (k+d)^j. Li_0(x) = x/(1-x).
inline double polylog_derivative_series(int j, int d, double x, const EvalPolicy& policy = {}) {
  if (j < 0) throw InvalidParams("polylog_derivative_series: j must be >= 0");
  if (d < 1) throw InvalidParams("polylog_derivative_series: d must be >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("polylog_derivative_series: x must lie in [0, 1)");
  const auto r = detail::scaled_polylog_derivative(j, d, x, policy);
  if (!r.converged) throw NotConverged("polylog_derivative_series: series did not converge");
  return factorial<double>(d) * r.value;
}

}  // namespace elemhyp
