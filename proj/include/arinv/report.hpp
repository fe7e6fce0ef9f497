#pragma once

// Text, CSV and JSON renderings of a list of check rows.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "arinv/height.hpp"
#include "arinv/ledger.hpp"

namespace arinv {

inline constexpr const char* kToolVersion = "0.3.0";

enum class ReportFormat { Text, Csv, Json };

struct ReportHeader {
  std::string version = kToolVersion;
  int precision_bits = 64;
  std::string normalization = kHeightNormalization;
};

inline std::string num12(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string render_csv(const std::vector<CheckResult>& rows) {
  std::string s = "check_id,object,lhs,rhs,margin,verdict,note\n";
  for (const auto& r : rows)
    s += csv_field(r.check_id) + "," + csv_field(r.object) + "," + num12(r.lhs) + "," + num12(r.rhs) + "," +
         num12(r.margin) + "," + to_string(r.verdict) + "," + csv_field(r.note) + "\n";
  return s;
}

inline std::string render_text(const ReportHeader& h, const std::vector<CheckResult>& rows) {
  std::size_t wid = 8, wobj = 6;
  for (const auto& r : rows) {
    wid = std::max(wid, r.check_id.size());
    wobj = std::max(wobj, r.object.size());
  }
  std::string s = "# inv " + h.version + "\n# precision: " + std::to_string(h.precision_bits) + " bits\n# " +
                  h.normalization + "\n";
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %20s  %20s  %20s  %-11s  %s\n", static_cast<int>(wid), "check",
                static_cast<int>(wobj), "object", "lhs", "rhs", "margin", "verdict", "note");
  s += buf;
  std::size_t pass = 0, fail = 0, report = 0;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %20s  %20s  %20s  %-11s  ", static_cast<int>(wid), r.check_id.c_str(),
                  static_cast<int>(wobj), r.object.c_str(), num12(r.lhs).c_str(), num12(r.rhs).c_str(),
                  num12(r.margin).c_str(), to_string(r.verdict).c_str());
    s += buf + r.note + "\n";
    (r.verdict == Verdict::Pass ? pass : r.verdict == Verdict::Fail ? fail : report)++;
  }
  s += "# " + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " + std::to_string(report) +
       " report-only\n";
  return s;
}

inline std::string render_json(const ReportHeader& h, const std::vector<CheckResult>& rows) {
  nlohmann::ordered_json j;
  j["tool"] = "inv";
  j["version"] = h.version;
  j["precision_bits"] = h.precision_bits;
  j["normalization"] = h.normalization;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["check_id"] = r.check_id;
    o["object"] = r.object;
    o["lhs"] = num12(r.lhs);
    o["rhs"] = num12(r.rhs);
    o["margin"] = num12(r.margin);
    o["verdict"] = to_string(r.verdict);
    o["note"] = r.note;
    j["rows"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

inline std::string render(ReportFormat f, const ReportHeader& h, const std::vector<CheckResult>& rows) {
  switch (f) {
    case ReportFormat::Csv: return render_csv(rows);
    case ReportFormat::Json: return render_json(h, rows);
    case ReportFormat::Text: break;
  }
  return render_text(h, rows);
}

}  // namespace arinv
