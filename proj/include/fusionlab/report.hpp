#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fusionlab::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "fusionlab-report/1";

enum class Format { text, json };

Format parse_format(std::string_view text);

/// {"value": v rounded to 12 significant digits, "certified": b}.
Json number(double v, bool certified);
/// Exact value carried as a string ("1/9", "258255469816").
Json exact(const std::string& v);
Json count(std::uint64_t n);

/// 12 significant digits: fixed notation for 1e-3 <= |v| < 1e6, else
/// scientific.
std::string format_number(double v);

/// Top-level envelope; config values are echoed as strings in the given
/// order.
Json envelope(std::string_view command, const std::vector<std::pair<std::string, std::string>>& config, Json result);

/// Deterministic rendering. Text output is one "key: value" line per leaf,
/// with uncertified numbers tagged and "summary" lines printed verbatim.
std::string emit(const Json& report, Format format);

}  // namespace fusionlab::report
