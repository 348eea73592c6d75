#include <cstdio>

#include "galsum/numeric.hpp"

namespace galsum {

std::string format_double(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  // snprintf honours LC_NUMERIC; normalise in case a caller changed it.
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

}  // namespace galsum
