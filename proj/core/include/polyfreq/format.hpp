#pragma once

#include <cstdio>
#include <string>

namespace polyfreq {

// Round-trip-exact spelling used by every CSV writer here:
// 17 significant digits, '.' decimal separator.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace polyfreq
