#include "fusionlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fusionlab/error.hpp"

namespace fusionlab::report {

Format parse_format(std::string_view text) {
  if (text == "text") return Format::text;
  if (text == "json") return Format::json;
  throw InputError("unknown format '" + std::string(text) + "' (expected text or json)");
}

namespace {

double round12(double v) {
  if (!std::isfinite(v)) throw ComputationError("non-finite value in report");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

bool is_wrapped(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("value") && j.contains("certified");
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  if (j.is_number_float()) return format_number(j.get<double>());
  if (j.is_null()) return "null";
  if (is_wrapped(j)) {
    std::string s = scalar_text(j["value"]);
    if (!j["certified"].get<bool>()) s += " [uncertified]";
    return s;
  }
  return j.dump();
}

bool is_leaf(const Json& j) { return !j.is_structured() || is_wrapped(j); }

void render(const Json& j, const std::string& key, std::string& out) {
  if (is_leaf(j)) {
    out += key + ": " + scalar_text(j) + "\n";
    return;
  }
  if (j.is_array()) {
    if (j.empty()) {
      out += key + ": (none)\n";
      return;
    }
    if (std::all_of(j.begin(), j.end(), is_leaf)) {
      std::string line;
      for (const auto& e : j) line += (line.empty() ? "" : ", ") + scalar_text(e);
      out += key + ": " + line + "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], key + "[" + std::to_string(i) + "]", out);
    return;
  }
  for (const auto& [k, v] : j.items()) render(v, key.empty() ? k : key + "." + k, out);
}

}  // namespace

Json number(double v, bool certified) { return Json{{"value", round12(v)}, {"certified", certified}}; }

Json exact(const std::string& v) { return Json{{"value", v}, {"certified", true}}; }

Json count(std::uint64_t n) { return Json{{"value", n}, {"certified", true}}; }

std::string format_number(double v) {
  v = round12(v);
  char buf[48];
  const double a = std::abs(v);
  if (v == 0 || (a >= 1e-3 && a < 1e6)) {
    std::snprintf(buf, sizeof buf, "%.12f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.11e", v);
  }
  return buf;
}

Json envelope(std::string_view command, const std::vector<std::pair<std::string, std::string>>& config, Json result) {
  Json report;
  report["schema"] = std::string(kSchema);
  report["command"] = std::string(command);
  Json cfg = Json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  report["config"] = std::move(cfg);
  report["result"] = std::move(result);
  return report;
}

std::string emit(const Json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::string out;
  out += "# " + report.value("schema", std::string(kSchema)) + " " + report.value("command", std::string()) + "\n";
  if (report.contains("config")) render(report["config"], "config", out);
  if (report.contains("result")) {
    const Json& result = report["result"];
    if (result.contains("summary")) {
      for (const auto& line : result["summary"]) out += line.get<std::string>() + "\n";
    }
    for (const auto& [k, v] : result.items()) {
      if (k != "summary") render(v, k, out);
    }
  }
  return out;
}

}  // namespace fusionlab::report
