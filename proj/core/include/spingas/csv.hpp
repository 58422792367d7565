#pragma once

#include <cstdio>
#include <string>

namespace spingas {

// 17-significant-digit, locale-independent decimal formatting ('.' decimal
// point always) so every double round-trips bit-exactly through the CSV.
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return std::string(buf);
}

} // namespace spingas
