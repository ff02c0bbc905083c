#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace valshare {

/// Shortest round-trip decimal form; always carries a '.' or exponent so it
/// reads back as a float rather than an exact integer.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

}  // namespace valshare
