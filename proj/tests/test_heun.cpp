#include <cmath>

#include "catch_amalgamated.hpp"
#include "elemhyp/heun.hpp"
#include "elemhyp/verify.hpp"

using namespace elemhyp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("parameter mapping") {
  const HeunSpec s = heun_params_from({1, 2.0, 3});
  CHECK(s.alpha == 1.0);
  CHECK(s.beta == 2.0);
  CHECK(s.gamma == 1.0);
  CHECK(s.delta == 1.0);  // m + n - p + 1
  CHECK(s.epsilon == 2.0);
  CHECK(s.a == 0.5);
  CHECK(s.q == 1.0);
  CHECK(s.fuchs_defect() == 0.0);
  CHECK(heun_params_from({2, -1.0, 4}).epsilon == 0.0);
  CHECK_THROWS_AS(heun_params_from({1, 0.0, 3}), InvalidParams);
  CHECK_THROWS_AS(heun_params_from({2, 1.0, 2}), InvalidParams);
}

TEST_CASE("parameter identities", "[property]") {
  const int m = GENERATE(1, 2, 3, 5);
  const int dp = GENERATE(1, 2, 4);
  const double n = GENERATE(-2.5, -1.0, 0.5, 1.0, 3.75, 8.0);
  const int p = m + dp;
  const HeunSpec s = heun_params_from({m, n, p});
  CHECK(s.gamma + s.epsilon == p);
  CHECK(s.gamma + s.delta == 2.0);
  CHECK(s.q == s.a * s.alpha * s.beta + s.a * (1.0 - s.delta) * s.epsilon);
}

TEST_CASE("expansion coefficients") {
  CHECK(heun_coeff({1, 2.0, 3}, 0) == 1.0);
  CHECK(heun_coeff({2, -1.0, 4}, 1) == 0.0);
  CHECK_THAT(heun_coeff({1, 2.0, 3}, 1), WithinRel(1.0 / 6.0, 1e-15));
  for (int k = 0; k < 30; ++k)
    CHECK_THAT(heun_coeff({1, 2.0, 3}, k), WithinRel(1.0 / ((2.0 * k + 1) * (k + 1)), 1e-13));
}

TEST_CASE("termination") {
  CHECK(heun_termination({2, -1.0, 4}) == 1);
  CHECK(heun_termination({1, 5.0, 3}) == 2);
  CHECK_FALSE(heun_termination({1, 0.5, 3}).has_value());
  CHECK(heun_termination({1, -4.0, 2}) == 3);
}

TEST_CASE("heun_eval") {
  CHECK_THAT(heun_eval({2, -1.0, 4}, 0.6, 1).value, WithinRel(0.7, 1e-15));
  CHECK(heun_eval({2, -1.0, 4}, 0.6, 5).value == heun_eval({2, -1.0, 4}, 0.6, 1).value);
  CHECK_THAT(heun_eval({1, 5.0, 3}, 0.0, 10).value, WithinRel(heun_normalization({1, 5.0, 3}), 1e-15));
  const auto r = heun_eval({1, 2.0, 3}, 0.0, 20);
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinRel(heun_normalization({1, 2.0, 3}), 1e-10));
  CHECK_THROWS_AS(heun_eval({1, 2.0, 3}, 1.0, 20), DomainError);
}

TEST_CASE("extrapolated sum converges faster than truncation") {
  const HeunFamilyParams fp{1, 2.0, 3};
  const double ref = heun_eval(fp, 0.3, 80).value;
  CHECK_THAT(heun_eval(fp, 0.3, 20).value, WithinRel(ref, 1e-12));
  CHECK(std::abs(heun_partial_sum(fp, 0.3, 80) - ref) > 1e-4);
}

TEST_CASE("normalization") {
  CHECK(heun_normalization({2, -1.0, 4}) == 1.0);
  CHECK_THAT(heun_normalization({1, 2.0, 3}), WithinRel(2.0 * std::log(2.0), 1e-12));
  CHECK_THAT(heun_normalization({2, 0.5, 4}), WithinRel(1.7048501385808201, 1e-12));
}

TEST_CASE("power-series oracle") {
  const HeunSpec s = heun_params_from({2, -1.0, 4});
  CHECK_THAT(heun_series_oracle(s, 0.3, 50), WithinRel(0.85, 1e-14));
  CHECK(heun_series_oracle(s, 0.0, 10) == 1.0);
  CHECK_THROWS_AS(heun_series_oracle(s, 0.5, 50), DomainError);
  // gamma = 0: the free coefficient has to be supplied
  const HeunSpec res = heun_params_from({1, 2.0, 2});
  REQUIRE(heun_resonant_index(res) == 1);
  CHECK_THROWS_AS(heun_series_oracle(res, 0.2, 50), InvalidParams);
}

TEST_CASE("terminating expansions match the oracle", "[property]") {
  for (const auto& fp : verify::heun_terminating_cases())
    for (double x : {0.05, 0.2, 0.45}) {
      const double norm = heun_normalization(fp);
      const double v = heun_eval(fp, x, 10).value / norm;
      CHECK_THAT(v, WithinRel(verify::heun_oracle_value(fp, x), 1e-9));
    }
}

TEST_CASE("ODE residual for terminating cases") {
  const auto r = heun_ode_residual({2, -1.0, 4}, 0.3, 1e-4, 10);
  CHECK(std::abs(r.residual) <= 1e-4 * r.scale);
  CHECK(heun_ode_residual({1, 5.0, 3}, 0.2, 1e-4, 10).relative() < 1e-6);
  CHECK_THROWS_AS(heun_ode_residual({1, 2.0, 3}, 0.5, 1e-4, 10), DomainError);
  CHECK_THROWS_AS(heun_ode_residual({1, 2.0, 3}, 0.2, 1e-2, 10), DomainError);
}

// The infinite expansion is not a solution of the equation when it does not
// terminate: for (1, 2, 3) the solution analytic at 0 is 1/(1-2x), which has a
// pole at x = a, while every 2F1 term is analytic on |x| < 1.
TEST_CASE("non-terminating expansion differs from the analytic solution") {
  const HeunFamilyParams fp{1, 2.0, 3};
  const double x = 0.2;
  CHECK_THAT(heun_series_oracle(heun_params_from(fp), x, 400), WithinRel(1.0 / (1.0 - 2.0 * x), 1e-14));
  const double v = heun_eval(fp, x, 40).value / heun_normalization(fp);
  CHECK(std::abs(v - 1.0 / (1.0 - 2.0 * x)) > 0.1);
  CHECK(heun_ode_residual(fp, x, 1e-4, 40).relative() > 0.1);
}
