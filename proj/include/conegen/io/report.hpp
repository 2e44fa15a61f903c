#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conegen/config.hpp"
#include "conegen/types.hpp"

namespace conegen::io {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "conegen-report/1";

enum class ReportStatus { kOk, kVerificationFailure, kInputError };

inline std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::kOk:
      return "ok";
    case ReportStatus::kVerificationFailure:
      return "verification-failure";
    default:
      return "input-error";
  }
}

inline int exit_code(ReportStatus s) {
  switch (s) {
    case ReportStatus::kOk:
      return 0;
    case ReportStatus::kVerificationFailure:
      return 1;
    default:
      return 2;
  }
}

// Numbers are emitted in the shortest form that parses back to the same
// double. Infinite extended reals are the strings "+inf" and "-inf".

inline json to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

inline json to_json(const Extended& v) {
  if (v.finite()) return to_json(v.value());
  return v.is_plus_infinity() ? "+inf" : "-inf";
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

inline json to_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json tolerances_json(const Config& cfg) {
  const Tolerances& t = cfg.tol;
  return json{{"membership", t.membership},       {"interior_margin", t.interior_margin},
              {"strict_norm", t.strict_norm},     {"lp_feasibility", t.lp_feasibility},
              {"gap", t.gap},                     {"kkt", t.kkt},
              {"certificate", t.certificate},     {"active_bound", t.active_bound}};
}

/// Top-level report document.
inline json make_report(const std::string& command, ReportStatus status, json result, const std::string& summary,
                        const Config& cfg) {
  return json{{"schema", kReportSchema},
              {"command", command},
              {"status", to_string(status)},
              {"exit_code", exit_code(status)},
              {"summary", summary},
              {"tolerances", tolerances_json(cfg)},
              {"result", std::move(result)}};
}

namespace detail {

inline void check_values(const json& j, const std::string& path, std::vector<std::string>& errors) {
  if (j.is_null()) errors.push_back(path + ": null value");
  if (j.is_number_float() && !std::isfinite(j.get<double>())) errors.push_back(path + ": non-finite number");
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) check_values(v, path + "." + k, errors);
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) check_values(j[i], path + "[" + std::to_string(i) + "]", errors);
  }
}

}  // namespace detail

/// Checks a document against the report schema; returns the violations.
inline std::vector<std::string> validate_report(const json& doc) {
  std::vector<std::string> errors;
  if (!doc.is_object()) return {"$: report must be an object"};
  const char* keys[] = {"schema", "command", "status", "exit_code", "summary", "tolerances", "result"};
  for (const char* k : keys) {
    if (!doc.contains(k)) errors.push_back(std::string("$: missing key \"") + k + "\"");
  }
  for (const auto& [k, _] : doc.items()) {
    bool known = false;
    for (const char* a : keys) known = known || k == a;
    if (!known) errors.push_back("$: unknown key \"" + k + "\"");
  }
  if (!errors.empty()) return errors;
  if (doc["schema"] != kReportSchema) errors.emplace_back("$.schema: unexpected schema tag");
  if (!doc["command"].is_string()) errors.emplace_back("$.command: expected a string");
  if (!doc["summary"].is_string()) errors.emplace_back("$.summary: expected a string");
  const json& st = doc["status"];
  const bool status_ok = st == "ok" || st == "verification-failure" || st == "input-error";
  if (!status_ok) errors.emplace_back("$.status: unknown status");
  if (!doc["exit_code"].is_number_integer()) {
    errors.emplace_back("$.exit_code: expected an integer");
  } else if (status_ok) {
    const int expected = st == "ok" ? 0 : st == "verification-failure" ? 1 : 2;
    if (doc["exit_code"].get<int>() != expected) errors.emplace_back("$.exit_code: inconsistent with status");
  }
  if (!doc["tolerances"].is_object()) errors.emplace_back("$.tolerances: expected an object");
  if (!doc["result"].is_object()) errors.emplace_back("$.result: expected an object");
  detail::check_values(doc, "$", errors);
  return errors;
}

inline std::string dump_report(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace conegen::io
