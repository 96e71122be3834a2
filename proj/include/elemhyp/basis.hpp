// Exact symbolic representation of x^n f_{n,j}(x) on the basis
//   (1-(1-x)^i)/(1-x)^i,  log(1-x),  Li_k(x),
// built from the closed form of f_{n,2} by repeated termwise integration.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "elemhyp/numcore.hpp"
#include "elemhyp/polylog.hpp"

namespace elemhyp {

using BigRational = boost::multiprecision::cpp_rational;

struct BasisFunction {
  enum class Kind { PowRatio, Log, Polylog };

  Kind kind = Kind::Log;
  int index = 0;  // i for PowRatio, k for Polylog, 0 for Log

  static BasisFunction pow_ratio(int i) {
    if (i < 1) throw InvalidParams("PowRatio index must be >= 1");
    return {Kind::PowRatio, i};
  }
  static BasisFunction log_term() { return {Kind::Log, 0}; }
  static BasisFunction polylog(int k) {
    if (k < 2) throw InvalidParams("Poly order must be >= 2");
    return {Kind::Polylog, k};
  }

  auto operator<=>(const BasisFunction&) const = default;

  /// Tag used in the JSON form: "pow_ratio", "log" or "polylog".
  const char* tag() const {
    switch (kind) {
      case Kind::PowRatio: return "pow_ratio";
      case Kind::Log: return "log";
      case Kind::Polylog: return "polylog";
    }
    return "?";
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::PowRatio: return "PowRatio(" + std::to_string(index) + ")";
      case Kind::Log: return "Log";
      case Kind::Polylog: return "Li" + std::to_string(index);
    }
    return "?";
  }
};

/// f_{n,j}(x) = x^{-n} * sum of coef * basis(x), coefficients exact.
struct SymbolicCombo {
  int n = 2;
  int j = 2;
  std::map<BasisFunction, BigRational> terms;

  void add(const BasisFunction& b, const BigRational& c) { terms[b] += c; }

  void normalize() {
    for (auto it = terms.begin(); it != terms.end();)
      it = (it->second == 0) ? terms.erase(it) : std::next(it);
  }

  std::size_t size() const { return terms.size(); }

  std::set<BasisFunction> basis_set() const {
    std::set<BasisFunction> s;
    for (const auto& [b, c] : terms) s.insert(b);
    return s;
  }
};

/// Basis set the structure theorem predicts for x^n f_{n,j}, n >= 2, j >= 2.
inline std::set<BasisFunction> expected_basis_set(int n, int j) {
  std::set<BasisFunction> s;
  if (j <= n) {
    for (int i = 1; i <= n - j + 1; ++i) s.insert(BasisFunction::pow_ratio(i));
    s.insert(BasisFunction::log_term());
    for (int k = 2; k <= j - 1; ++k) s.insert(BasisFunction::polylog(k));
  } else if (j == n + 1) {
    s.insert(BasisFunction::log_term());
    for (int k = 2; k <= n; ++k) s.insert(BasisFunction::polylog(k));
  } else {
    for (int k = j - n; k <= j - 1; ++k) s.insert(BasisFunction::polylog(k));
  }
  return s;
}

namespace detail {

inline SymbolicCombo fnj_two(int n) {
  SymbolicCombo c;
  c.n = n;
  c.j = 2;
  const int sgn = (n - 1) % 2 == 0 ? 1 : -1;
  for (int i = 1; i <= n - 1; ++i) {
    const int s = ((n - 1 + i) % 2 == 0) ? 1 : -1;
    c.add(BasisFunction::pow_ratio(i),
          BigRational(s * exact_binomial(n - 1, i), BigInt(n) * i));
  }
  c.add(BasisFunction::log_term(), BigRational(-sgn, n));
  c.normalize();
  return c;
}

// x^n f_{n,j+1}(x) = integral over [0, x] of (t^n f_{n,j}(t)) / t dt, termwise.
inline SymbolicCombo integrate_step(const SymbolicCombo& in) {
  SymbolicCombo out;
  out.n = in.n;
  out.j = in.j + 1;
  for (const auto& [b, coef] : in.terms) {
    switch (b.kind) {
      case BasisFunction::Kind::PowRatio:
        for (int l = 0; l <= b.index - 2; ++l) {
          const int s = b.index - l - 1;
          out.add(BasisFunction::pow_ratio(s), coef / s);
        }
        out.add(BasisFunction::log_term(), -coef);
        break;
      case BasisFunction::Kind::Log:
        out.add(BasisFunction::polylog(2), -coef);
        break;
      case BasisFunction::Kind::Polylog:
        out.add(BasisFunction::polylog(b.index + 1), coef);
        break;
    }
  }
  out.normalize();
  return out;
}

// Memoized builder; accepts n = 1 for internal use by the moment formula.
inline SymbolicCombo build_combo(int n, int j) {
  if (n < 1 || j < 2) throw InvalidParams("build_combo: need n >= 1, j >= 2");
  static std::shared_mutex mutex;
  static std::map<std::pair<int, int>, SymbolicCombo> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find({n, j}); it != cache.end()) return it->second;
  }
  std::unique_lock lock(mutex);
  int start = 2;
  SymbolicCombo c;
  for (int jj = j; jj >= 2; --jj) {
    if (auto it = cache.find({n, jj}); it != cache.end()) {
      c = it->second;
      start = jj;
      break;
    }
  }
  if (c.terms.empty()) {
    c = fnj_two(n);
    cache.emplace(std::pair{n, 2}, c);
  }
  for (int jj = start + 1; jj <= j; ++jj) {
    c = integrate_step(c);
    cache.emplace(std::pair{n, jj}, c);
  }
  return c;
}

template <class Real>
Real to_real(const BigRational& r) {
  return elemhyp::to_real<Real>(boost::multiprecision::numerator(r)) /
         elemhyp::to_real<Real>(boost::multiprecision::denominator(r));
}

template <class Real>
Real basis_value(const BasisFunction& b, const Real& x, const EvalPolicy& policy) {
  using std::expm1;
  using std::log1p;
  switch (b.kind) {
    case BasisFunction::Kind::PowRatio:
      return expm1(Real(-b.index) * log1p(-x));  // (1-x)^{-i} - 1
    case BasisFunction::Kind::Log:
      return log1p(-x);
    case BasisFunction::Kind::Polylog:
      return polylog_t<Real>(PolylogOrder(b.index), x, policy);
  }
  throw InvalidParams("basis_value: unknown basis kind");
}

}  // namespace detail

/// Closed forms f_{n,0}(x) = (1-x)^{-(n+1)} and f_{n,1}(x) = 1/(n (1-x)^n).
inline std::function<double(double)> fnj_base(int n, int j) {
  if (n < 1) throw InvalidParams("fnj_base: n must be >= 1");
  if (j == 0) return [n](double x) { return std::pow(1.0 - x, -(n + 1)); };
  if (j == 1) return [n](double x) { return 1.0 / (n * std::pow(1.0 - x, n)); };
  throw InvalidParams("fnj_base: j must be 0 or 1");
}

/// Exact combination for x^n f_{n,j}(x), n >= 2, j >= 2.
inline SymbolicCombo fnj_combo(int n, int j) {
  if (n < 2) throw InvalidParams("fnj_combo: combos are defined for n >= 2");
  if (j < 2) throw InvalidParams("fnj_combo: j must be >= 2");
  return detail::build_combo(n, j);
}

/// x^{-n} * sum coef_b * b(x) evaluated in Real.
template <class Real = WideReal>
Real combo_eval_t(const SymbolicCombo& c, const Real& x, const EvalPolicy& policy = {}) {
  if (!(x > Real(0) && x < Real(1))) throw DomainError("combo_eval: x must lie in (0, 1)");
  const EvalPolicy tight = policy.tightened_for<Real>();
  CompensatedSum<Real> acc;
  for (const auto& [b, coef] : c.terms)
    acc += detail::to_real<Real>(coef) * detail::basis_value<Real>(b, x, tight);
  return acc.value() * ipow(x, -c.n);
}

template <class Real = WideReal>
double combo_eval(const SymbolicCombo& c, double x, const EvalPolicy& policy = {}) {
  return static_cast<double>(combo_eval_t<Real>(c, Real(x), policy));
}

/// Direct summation of f_{n,j}(x) = sum_k C(n+k, k) x^k / (n+k)^j.
inline SeriesResult fnj_series(int n, int j, double x, const EvalPolicy& policy = {}) {
  if (n < 1) throw InvalidParams("fnj_series: n must be >= 1");
  if (j < 0) throw InvalidParams("fnj_series: j must be >= 0");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("fnj_series: x must lie in [0, 1)");
  double t = 1.0 / std::pow(static_cast<double>(n), j);
  return sum_series(
      [&](std::size_t k) {
        const double current = t;
        const double kd = static_cast<double>(k);
        t *= (n + kd + 1.0) / (kd + 1.0) * x * std::pow((n + kd) / (n + kd + 1.0), j);
        return current;
      },
      policy);
}

/// f_{n,j}(x) for any j >= 0 and 0 < x < 1, in Real. Uses the closed forms
/// for j <= 1 and the exact combination otherwise (n = 1 allowed).
template <class Real = WideReal>
Real fnj_value_t(int n, int j, const Real& x, const EvalPolicy& policy = {}) {
  if (n < 1 || j < 0) throw InvalidParams("fnj_value: need n >= 1, j >= 0");
  if (j == 0) return ipow(Real(1) - x, -(n + 1));
  if (j == 1) return Real(1) / (Real(n) * ipow(Real(1) - x, n));
  return combo_eval_t<Real>(detail::build_combo(n, j), x, policy);
}

}  // namespace elemhyp
