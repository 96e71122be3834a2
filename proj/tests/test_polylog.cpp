#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>

#include "catch_amalgamated.hpp"
#include "elemhyp/polylog.hpp"

using namespace elemhyp;
using Catch::Matchers::WithinRel;

TEST_CASE("polylog values") {
  CHECK_THAT(polylog(PolylogOrder(1), 0.5), WithinRel(std::log(2.0), 1e-15));
  CHECK_THAT(polylog(PolylogOrder(2), 1.0), WithinRel(std::numbers::pi * std::numbers::pi / 6.0, 1e-12));
  CHECK(polylog(PolylogOrder(3), 0.0) == 0.0);
  // Li_2(1/2) = pi^2/12 - (log 2)^2 / 2
  const double l2 = std::log(2.0);
  CHECK_THAT(polylog(PolylogOrder(2), 0.5),
             WithinRel(std::numbers::pi * std::numbers::pi / 12.0 - l2 * l2 / 2.0, 1e-12));
}

TEST_CASE("polylog domain") {
  CHECK_THROWS_AS(PolylogOrder(0), InvalidParams);
  CHECK_THROWS_AS(polylog(PolylogOrder(2), 0.9999999), DomainError);
  CHECK_THROWS_AS(polylog(PolylogOrder(1), 1.0), DomainError);
}

TEST_CASE("polylog in WideReal") {
  EvalPolicy p = EvalPolicy{}.tightened_for<WideReal>();
  const WideReal v = polylog_t<WideReal>(PolylogOrder(2), WideReal(0.5), p);
  const WideReal l2 = log(WideReal(2));
  const WideReal pi = boost::math::constants::pi<WideReal>();
  CHECK(static_cast<double>(abs(v - (pi * pi / 12 - l2 * l2 / 2))) < 1e-30);
}

TEST_CASE("Li_k(x) + Li_k(-x) = 2^{1-k} Li_k(x^2)", "[property]") {
  const int k = GENERATE(2, 3, 6);
  const double x = GENERATE(take(5, random(0.05, 0.95)));
  const PolylogOrder o(k);
  // the left side cancels to a small value, so truncate well below the check tolerance
  EvalPolicy tight;
  tight.rel_tol = 1e-15;
  CHECK_THAT(polylog(o, x, tight) + polylog(o, -x, tight),
             WithinRel(std::pow(2.0, 1 - k) * polylog(o, x * x, tight), 1e-11));
}

TEST_CASE("derivatives of Li_j") {
  CHECK_THAT(polylog_derivative_series(1, 1, 0.5), WithinRel(2.0, 1e-12));
  CHECK_THAT(polylog_derivative_series(2, 1, 0.5), WithinRel(2.0 * std::log(2.0), 1e-12));
  CHECK_THAT(polylog_derivative_series(0, 2, 0.3), WithinRel(2.0 / std::pow(0.7, 3), 1e-12));
  CHECK_THROWS_AS(polylog_derivative_series(2, 0, 0.5), InvalidParams);
  CHECK_THROWS_AS(polylog_derivative_series(2, 1, 1.0), DomainError);
}

TEST_CASE("Li_k' = Li_{k-1} / x", "[property]") {
  const int k = GENERATE(2, 3, 4, 5);
  const double x = GENERATE(take(5, random(0.05, 0.9)));
  CHECK_THAT(polylog_derivative_series(k, 1, x), WithinRel(polylog(PolylogOrder(k - 1), x) / x, 1e-11));
}
