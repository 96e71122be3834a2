#include <sstream>

#include "catch_amalgamated.hpp"
#include "elemhyp/report.hpp"

using namespace elemhyp;

TEST_CASE("real formatting") {
  CHECK(format_real(1.0) == "1.0");
  CHECK(format_real(0.625) == "0.625");
  CHECK(format_real(0.7) == "0.69999999999999996");
  CHECK(format_real(1e300) == "1.0000000000000001e+300");
  CHECK(format_real(std::nan("")) == "null");
  CHECK(std::stod(format_real(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("json dump prints 17 digits") {
  Json j{{"value", 1.0}, {"x", 0.1}, {"k", 3}, {"s", "a\"b"}, {"none", nullptr}, {"list", {1.5, true}}};
  const std::string s = dump_json(j, -1);
  CHECK(s == R"({"value":1.0,"x":0.10000000000000001,"k":3,"s":"a\"b","none":null,"list":[1.5,true]})");
  CHECK(Json::parse(dump_json(j)) == Json::parse(s));
}

TEST_CASE("report summary and csv") {
  Report r;
  r.suite = "demo";
  r.entries.push_back(make_entry("op", {{"n", 2}, {"x", 0.5}}, 1.0, 1.0, 1e-12));
  r.entries.push_back(make_entry("op", {{"n", 3}}, 1.1, 1.0, 1e-12));
  const auto s = r.summary();
  CHECK(s.total == 2);
  CHECK(s.passed == 1);
  CHECK(s.max_rel_err == Catch::Approx(0.1));
  CHECK_FALSE(r.all_pass());
  std::ostringstream os;
  write_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "operation,inputs,result,oracle,rel_err,pass");
  std::getline(is, line);
  CHECK(line == "op,n=2.0;x=0.5,1.0,1.0,0.0,true");
}

TEST_CASE("relative error falls back to absolute at zero") {
  CHECK(relative_error(1e-3, 0.0) == 1e-3);
  CHECK(relative_error(2.0, 4.0) == 0.5);
}

TEST_CASE("symbolic combination JSON") {
  const Json j = combo_to_json(fnj_combo(3, 2));
  CHECK(j["n"] == 3);
  CHECK(j["j"] == 2);
  REQUIRE(j["terms"].size() == 3);
  const auto& t = j["terms"][0];
  CHECK(t["basis"] == "pow_ratio");
  CHECK(t["i"] == 1);
  CHECK(t["num"] == "-2");
  CHECK(t["den"] == "3");
}
