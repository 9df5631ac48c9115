#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

namespace kbsim {

// Floats are written with 17 significant digits, enough to round-trip any
// double exactly, so identical runs serialize to identical bytes.
inline std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180 quoting: a field containing comma, quote or newline is wrapped in
// double quotes with inner quotes doubled.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace kbsim
