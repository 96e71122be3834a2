// Shared numerical kernel: error types, evaluation policy, compensated
// series summation, Pochhammer symbols and exact binomials.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#if defined(ELEMHYP_USE_FLOAT128)
#include <boost/multiprecision/float128.hpp>
#else
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

namespace elemhyp {

// -- errors -----------------------------------------------------------------

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- working precision --------------------------------------------------------

/// 113-bit float used internally by the closed forms. Their x^{1-p}
/// prefactors cancel roughly (p-1)*log10(1/x) digits, which double cannot
/// afford on the tested grids.
#if defined(ELEMHYP_USE_FLOAT128)
using WideReal = boost::multiprecision::float128;
#else
using WideReal = boost::multiprecision::cpp_bin_float_quad;
#endif

using BigInt = boost::multiprecision::cpp_int;

template <class Real>
inline Real working_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

// -- policy / results ---------------------------------------------------------

struct EvalPolicy {
  double rel_tol = 1e-12;
  std::size_t max_terms = 100000;
  int consecutive_small = 3;
  double x_switch = 0.05;

  void validate() const {
    if (!(rel_tol > 0.0)) throw InvalidParams("EvalPolicy: rel_tol must be > 0");
    if (max_terms < 1) throw InvalidParams("EvalPolicy: max_terms must be >= 1");
    if (consecutive_small < 1)
      throw InvalidParams("EvalPolicy: consecutive_small must be >= 1");
    if (!(x_switch >= 0.0 && x_switch < 1.0))
      throw InvalidParams("EvalPolicy: x_switch must lie in [0, 1)");
  }

  /// Same policy with rel_tol tightened to the precision of Real.
  template <class Real>
  EvalPolicy tightened_for() const {
    EvalPolicy p = *this;
    const double eps = static_cast<double>(working_epsilon<Real>());
    p.rel_tol = std::min(rel_tol, 4.0 * eps);
    return p;
  }
};

template <class Real>
struct BasicSeriesResult {
  Real value{0};
  std::size_t terms_used = 0;
  bool converged = false;
  Real trunc_err_est{0};
};

using SeriesResult = BasicSeriesResult<double>;

// -- small helpers ------------------------------------------------------------

template <class Real>
Real ipow(Real base, long long e) {
  if (e < 0) return Real(1) / ipow(base, -e);
  Real result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

inline bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

template <class Real>
bool is_finite_value(const Real& v) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(v);
}

/// Neumaier's variant of Kahan summation.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& v) {
    using std::abs;
    const Real t = sum_ + v;
    if (abs(sum_) >= abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(const Real& v) {
    add(v);
    return *this;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

// -- exact integers -----------------------------------------------------------

inline BigInt exact_factorial(int n) {
  if (n < 0) throw InvalidParams("factorial of negative integer");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt exact_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

/// Converts an arbitrary-size integer to Real limb by limb, so values past
/// 2^64 keep full Real precision.
template <class Real>
Real to_real(BigInt v) {
  const bool negative = v < 0;
  if (negative) v = -v;
  Real result(0);
  Real scale(1);
  const BigInt mask = (BigInt(1) << 32) - 1;
  while (v != 0) {
    const auto limb = static_cast<std::uint64_t>(v & mask);
    result += Real(limb) * scale;
    scale *= Real(4294967296.0);
    v >>= 32;
  }
  return negative ? -result : result;
}

/// C(n, k) as Real: exact integer arithmetic up to n = 1000, log-gamma beyond.
template <class Real = double>
Real binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return Real(0);
  if (n <= 1000) {
    // rows of Pascal's triangle, each entry rounded once from the exact value
    thread_local std::vector<std::vector<Real>> rows;
    if (rows.size() <= static_cast<std::size_t>(n)) rows.resize(n + 1);
    auto& row = rows[n];
    if (row.empty()) {
      row.reserve(n + 1);
      for (int i = 0; i <= n; ++i) row.push_back(to_real<Real>(exact_binomial(n, i)));
    }
    return row[k];
  }
  const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return Real(std::exp(lg));
}

template <class Real = double>
Real factorial(int n) {
  return to_real<Real>(exact_factorial(n));
}

// -- Pochhammer and generalised binomial --------------------------------------

/// Rising factorial (r)_m = r (r+1) ... (r+m-1), with (r)_0 = 1.
template <class Real = double>
Real pochhammer(Real r, int m) {
  if (m < 0) throw InvalidParams("pochhammer: m must be >= 0");
  Real result(1);
  for (int i = 0; i < m; ++i) result *= (r + Real(i));
  return result;
}

/// a (a-1) ... (a-k+1) / k!
template <class Real = double>
Real gen_binomial(Real a, int k) {
  if (k < 0) throw InvalidParams("gen_binomial: k must be >= 0");
  Real result(1);
  for (int i = 0; i < k; ++i) result = result * (a - Real(i)) / Real(i + 1);
  return result;
}

// -- series engine ------------------------------------------------------------

/// Sums term(0), term(1), ... until `consecutive_small` successive terms are
/// each below rel_tol * |partial sum|, or max_terms is reached
/// (converged = false). Throws NonFinite on a NaN/inf term.
template <class TermSource>
auto sum_series(TermSource&& term, const EvalPolicy& policy)
    -> BasicSeriesResult<std::decay_t<decltype(term(std::size_t{0}))>> {
  using Real = std::decay_t<decltype(term(std::size_t{0}))>;
  using std::abs;
  policy.validate();

  constexpr double kAbsFloor = 1e-300;
  BasicSeriesResult<Real> out;
  CompensatedSum<Real> acc;
  int small_run = 0;
  Real last(0);
  for (std::size_t k = 0; k < policy.max_terms; ++k) {
    const Real t = term(k);
    if (!is_finite_value(t))
      throw NonFinite("sum_series: non-finite term at index " + std::to_string(k));
    acc.add(t);
    last = t;
    out.terms_used = k + 1;
    const Real partial = acc.value();
    const Real bound = Real(policy.rel_tol) * abs(partial);
    if (abs(t) <= bound || abs(t) < Real(kAbsFloor)) {
      if (++small_run >= policy.consecutive_small) {
        out.converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  out.value = acc.value();
  out.trunc_err_est = abs(last);
  return out;
}

// -- power integral -----------------------------------------------------------

/// Integral of s^e over [1-x, 1], 0 < x < 1. The e = -1 branch (log form) is
/// taken when |e+1| < 1e-9.
template <class Real = double>
Real power_integral(const Real& e, const Real& x) {
  using std::log1p;
  using std::expm1;
  using std::abs;
  if (!(x > Real(0) && x < Real(1)))
    throw DomainError("power_integral: x must lie in (0, 1)");
  const Real e1 = e + Real(1);
  if (abs(e1) < Real(1e-9)) return -log1p(-x);
  // (1 - (1-x)^{e+1}) / (e+1), written to keep full relative accuracy.
  return -expm1(e1 * log1p(-x)) / e1;
}

}  // namespace elemhyp
