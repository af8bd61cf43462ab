#pragma once

// Locale-independent number formatting for CSV and JSON exports.

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

namespace ruelle {

using Json = nlohmann::ordered_json;

/// 17 significant digits in scientific notation; "null" for non-finite.
inline std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

/// 15 significant digits, shortest of fixed/scientific.
inline std::string csv_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, r.ptr);
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_json(os, v, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << json_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Pretty-printed JSON with every float at 17 significant digits.
inline std::string to_json_text(const Json& j) {
  std::ostringstream os;
  detail::write_json(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace ruelle
