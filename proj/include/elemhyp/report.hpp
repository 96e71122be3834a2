// Verification reports and their JSON / CSV renderings. Reals are printed
// with 17 significant digits so every value round-trips exactly.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "elemhyp/basis.hpp"

namespace elemhyp {

using Json = nlohmann::ordered_json;

struct ReportEntry {
  std::string operation;
  std::vector<std::pair<std::string, double>> inputs;
  double result = 0.0;
  double oracle = 0.0;
  double rel_err = 0.0;
  bool pass = false;
};

/// |result - oracle| / |oracle|, or the absolute difference when oracle is 0.
inline double relative_error(double result, double oracle) {
  const double diff = std::abs(result - oracle);
  return oracle == 0.0 ? diff : diff / std::abs(oracle);
}

inline ReportEntry make_entry(std::string operation,
                              std::vector<std::pair<std::string, double>> inputs, double result,
                              double oracle, double tolerance) {
  ReportEntry e{std::move(operation), std::move(inputs), result, oracle, 0.0, false};
  e.rel_err = relative_error(result, oracle);
  e.pass = e.rel_err <= tolerance;
  return e;
}

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  double max_rel_err = 0.0;
};

struct Report {
  std::string suite;
  std::vector<ReportEntry> entries;

  void append(const std::vector<ReportEntry>& more) {
    entries.insert(entries.end(), more.begin(), more.end());
  }

  ReportSummary summary() const {
    ReportSummary s;
    s.total = entries.size();
    for (const auto& e : entries) {
      if (e.pass) ++s.passed;
      if (std::isnan(e.rel_err) || e.rel_err > s.max_rel_err) s.max_rel_err = e.rel_err;
    }
    return s;
  }

  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
  }
};

// -- formatting -----------------------------------------------------------------

/// %.17g, with ".0" appended to integral values; non-finite values give "null".
inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void dump_json(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_json(value, out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_json(value, out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Serializes with floats at 17 significant digits (nlohmann prints the
/// shortest round-trip form instead).
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_json(j, out, indent, 0);
  return out;
}

inline Json to_json(const ReportEntry& e) {
  Json inputs = Json::object();
  for (const auto& [k, v] : e.inputs) inputs[k] = v;
  return Json{{"operation", e.operation}, {"inputs", inputs},  {"result", e.result},
              {"oracle", e.oracle},       {"rel_err", e.rel_err}, {"pass", e.pass}};
}

inline Json to_json(const Report& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  const auto s = r.summary();
  return Json{{"suite", r.suite},
              {"entries", entries},
              {"summary", {{"total", s.total}, {"passed", s.passed}, {"max_rel_err", s.max_rel_err}}}};
}

inline constexpr const char* kCsvHeader = "operation,inputs,result,oracle,rel_err,pass";

/// One row per entry; inputs are rendered as key=value pairs joined by ';'.
inline void write_csv(std::ostream& os, const Report& r) {
  os << kCsvHeader << '\n';
  for (const auto& e : r.entries) {
    std::string inputs;
    for (const auto& [k, v] : e.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += k + '=' + format_real(v);
    }
    os << e.operation << ',' << inputs << ',' << format_real(e.result) << ','
       << format_real(e.oracle) << ',' << format_real(e.rel_err) << ','
       << (e.pass ? "true" : "false") << '\n';
  }
}

/// {n, j, terms: [{basis, i | k, num, den}]} with exact rational coefficients.
inline Json combo_to_json(const SymbolicCombo& c) {
  Json terms = Json::array();
  for (const auto& [b, coef] : c.terms) {
    Json t{{"basis", b.tag()}};
    if (b.kind == BasisFunction::Kind::PowRatio) t["i"] = b.index;
    if (b.kind == BasisFunction::Kind::Polylog) t["k"] = b.index;
    t["num"] = boost::multiprecision::numerator(coef).str();
    t["den"] = boost::multiprecision::denominator(coef).str();
    terms.push_back(std::move(t));
  }
  return Json{{"n", c.n}, {"j", c.j}, {"terms", terms}};
}

}  // namespace elemhyp
