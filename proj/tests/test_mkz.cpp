#include <cmath>

#include "catch_amalgamated.hpp"
#include "elemhyp/mkz.hpp"

using namespace elemhyp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EvalPolicy tight() {
  EvalPolicy p;
  p.rel_tol = 1e-15;
  return p;
}

double direct(const GmkzParams& gp, int r, double x) { return gmkz_apply(gp, Monomial(r), x, tight()).value; }

}  // namespace

TEST_CASE("gmkz_apply") {
  const auto c3 = GmkzParams::classical(3);
  CHECK_THAT(direct(c3, 0, 0.4), WithinRel(1.0, 1e-13));
  CHECK_THAT(direct(c3, 1, 0.4), WithinRel(0.4, 1e-13));
  CHECK_THAT(direct({2, 3, 2.0, 1.0}, 1, 0.5), WithinRel(0.625, 1e-13));
  CHECK_THROWS_AS(direct({2, 1, 0.0, 1.0}, 1, 0.5), InvalidParams);
  CHECK_THROWS_AS(direct(c3, 1, 1.0), DomainError);
  CHECK_THROWS_AS(Monomial(-1), InvalidParams);
}

TEST_CASE("partition of unity", "[property]") {
  const int n = GENERATE(1, 2, 5, 9);
  const int r = GENERATE(1, 2, 3);
  const double alpha = GENERATE(0.0, 1.5, 3.0);
  const double x = GENERATE(take(3, random(0.0, 0.9)));
  CHECK_THAT(direct({n, r, alpha, alpha / 2}, 0, x), WithinRel(1.0, 1e-10));
}

TEST_CASE("second moment") {
  CHECK_THAT(mkz_moment_e2(1, 0.5), WithinRel(std::log(2.0) / 2.0, 1e-15));
  CHECK(mkz_moment_e2(4, 0.0) == 0.0);
  CHECK_THAT(mkz_moment_e2(5, 0.3), WithinRel(direct(GmkzParams::classical(5), 2, 0.3), 1e-8));
  CHECK_THAT(mkz_moment(3, 2, 0.5), WithinRel(mkz_moment_e2(3, 0.5), 1e-9));
}

TEST_CASE("second moment correction is positive and decreasing in n") {
  for (double x : {0.2, 0.5, 0.8}) {
    double prev = 1.0;
    for (int n = 1; n <= 12; ++n) {
      const double corr = mkz_moment_e2(n, x) - x * x;
      CHECK(corr > 0.0);
      CHECK(corr < prev);
      prev = corr;
    }
  }
}

TEST_CASE("moments through the kernel combinations") {
  CHECK(mkz_moment(7, 0, 0.2) == 1.0);
  CHECK_THAT(mkz_moment(4, 1, 0.6), WithinRel(0.6, 1e-12));
  CHECK_THROWS_AS(mkz_moment(3, 2, 0.0), DomainError);
}

TEST_CASE("higher moments match direct summation", "[property]") {
  const int n = GENERATE(1, 2, 4, 8);
  const int r = GENERATE(3, 4, 6);
  const double x = GENERATE(take(3, random(0.1, 0.85)));
  CHECK_THAT(mkz_moment(n, r, x), WithinRel(direct(GmkzParams::classical(n), r, x), 1e-9));
}

TEST_CASE("L_n second moment") {
  CHECK(ln_moment_e2(2, 0.0) == 0.0);
  const double x = 0.3;
  const double f = hyp2f1_series(1, 3, 9, x, tight()).value;
  CHECK_THAT(ln_moment_e2(6, x), WithinRel(x * x + 2.0 * x * (1 - x) * (1 - x) / 8.0 * f, 1e-9));
  // The displayed Beta-integral operator moves the value at 0 away from 0.
  CHECK_THAT(ln_apply_e2(3, 0.0).value, WithinRel(2.0 / (6.0 * 7.0), 1e-15));
}

TEST_CASE("generalized first moment") {
  CHECK_THAT(gmkz_e1({2, 3, 2.0, 1.0}, 0.5), WithinRel(0.625, 1e-14));
  CHECK_THAT(gmkz_e1({3, 1, 0.0, 0.0}, 0.4), WithinRel(0.4, 1e-13));
  CHECK_THAT(gmkz_e1({3, 2, 2.0, 1.5}, 0.0), WithinRel(1.5 / 5.0, 1e-15));
  CHECK_THROWS_AS(gmkz_e1({3, 2, 1.5, 1.0}, 0.3), InvalidParams);
}

TEST_CASE("generalized first moment matches direct summation", "[property]") {
  const int n = GENERATE(1, 3, 6);
  const int r = GENERATE(1, 2, 4);
  const int alpha = GENERATE(0, 1, 3);
  const double x = GENERATE(take(3, random(0.05, 0.9)));
  const GmkzParams gp{n, r, static_cast<double>(alpha), alpha / 3.0};
  CHECK_THAT(gmkz_e1(gp, x), WithinRel(direct(gp, 1, x), 1e-10));
}

TEST_CASE("moments via derivatives of polylogarithms") {
  CHECK_THAT(gmkz_moment_abel(2, 2, 1.0, 1, 0.5), WithinRel(0.625, 1e-12));
  CHECK(gmkz_moment_abel(3, 1, 0.5, 0, 0.7) == 1.0);
  CHECK_THAT(gmkz_moment_abel(2, 1, 0.0, 2, 0.4), WithinRel(direct({2, 2, 1.0, 0.0}, 2, 0.4), 1e-8));
  CHECK_THROWS_AS(gmkz_moment_abel(2, 1, 2.0, 2, 0.4), InvalidParams);
}
