#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "catch_amalgamated.hpp"
#include "elemhyp/report.hpp"

using elemhyp::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + ELEMHYP_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("hyp2f1 command") {
  auto r = cli("hyp2f1 --m 1 --n 2 --p 3 --x 0.5 --method closed");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == 1.5451774444795625);
  CHECK(j["method"] == "12");

  r = cli("hyp2f1 --m 1 --n 2 --p 2 --x 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"value\": 1.0") != std::string::npos);

  CHECK(cli("hyp2f1 --m 3 --n 2 --p 2 --x 0.5").code == 2);
  CHECK(cli("hyp2f1 --m 1 --n 2 --p 3 --x 1.5").code == 2);
  CHECK(cli("hyp2f1 --m 1 --n 2.5 --p 3 --x 0.5 --method closed --variant A").code == 2);

  r = cli("hyp2f1 --m 2 --n 0.5 --p 4 --x 0.3 --compare");
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["rel_err"].get<double>() < 1e-12);
}

TEST_CASE("moment command") {
  auto r = cli("moment --operator mkz --n 1 --r 2 --x 0.5 --route both");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["closed"].get<double>() == 0.34657359027997264);
  CHECK(j["rel_err"].get<double>() <= 1e-8);

  r = cli("moment --operator mkz --n 5 --r 0 --x 0.3");
  CHECK(Json::parse(r.out)["value"].get<double>() == 1.0);

  r = cli("moment --operator gmkz --n 2 --rop 3 --alpha 2 --beta 1 --r 1 --x 0.5");
  CHECK(Json::parse(r.out)["value"].get<double>() == 0.625);

  r = cli("moment --operator gmkz --n 2 --rop 2 --alpha 1 --beta 0 --r 2 --x 0.4 --route both");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["rel_err"].get<double>() < 1e-8);

  CHECK(cli("moment --operator ln --n 2 --r 3 --x 0.5").code == 2);
  CHECK(cli("moment --operator mkz --n 2 --r 1 --x 0.5 --alpha 1").code == 2);
  CHECK(cli("moment --operator nope --n 2 --r 1 --x 0.5").code == 2);
}

TEST_CASE("fnj command") {
  auto r = cli("fnj --n 2 --j 2 --x 0.5");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["rel_err"].get<double>() < 1e-12);

  r = cli("fnj --n 5 --j 3 --emit-symbolic");
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["terms"].size() == 5);
  CHECK(j["terms"][0]["basis"] == "pow_ratio");

  CHECK(cli("fnj --n 1 --j 2 --emit-symbolic").code == 2);
  CHECK(cli("fnj --n 3 --j 2").code == 2);
}

TEST_CASE("heun command") {
  auto r = cli("heun --m 2 --n -1 --p 4 --x 0.6");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == 0.7);
  CHECK(j["termination"] == 1);
  CHECK(j["normalization"].get<double>() == 1.0);

  r = cli("heun --m 1 --n 0.5 --p 3 --x 0.2 --terms 40");
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["termination"].is_null());

  r = cli("heun --m 1 --n 5 --p 3 --x 0.2 --check-ode --normalized");
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["residual"].get<double>() < 1e-6);

  CHECK(cli("heun --m 1 --n 0 --p 3 --x 0.2").code == 2);
  CHECK(cli("heun --m 2 --n -1 --p 4 --x 0.6 --check-ode").code == 2);
}

TEST_CASE("verify command") {
  auto r = cli("verify --suite hypergeom --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("operation,inputs,result,oracle,rel_err,pass\n", 0) == 0);

  r = cli("verify --suite basis");
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["summary"]["total"] == j["entries"].size());
  CHECK(j["summary"]["passed"] == j["summary"]["total"]);

  CHECK(cli("verify --suite bogus").code == 2);
  CHECK(cli("verify --format xml").code == 2);
}

TEST_CASE("global options and environment") {
  CHECK(cli("hyp2f1 --m 1 --n 2 --p 3 --x 0.5", "ELEMHYP_REL_TOL=1e-10").code == 0);
  CHECK(cli("hyp2f1 --m 1 --n 2 --p 3 --x 0.5", "ELEMHYP_REL_TOL=abc").code == 2);
  // the flag wins over the environment
  CHECK(cli("--rel-tol 1e-12 hyp2f1 --m 1 --n 2 --p 3 --x 0.5", "ELEMHYP_REL_TOL=abc").code == 0);
  CHECK(cli("hyp2f1 --m 1 --n 2 --p 3 --x 0.5 --rel-tol 1e-12").code == 0);
  CHECK(cli("hyp2f1 --m 1 --n 2 --p 3 --x 0.5 --rel-tol -1").code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("identical flags give identical output") {
  const std::string args = "hyp2f1 --m 2 --n 0.5 --p 7 --x 0.3 --compare";
  CHECK(cli(args).out == cli(args).out);
  CHECK(cli("verify --suite basis --format csv").out == cli("verify --suite basis --format csv").out);
}
