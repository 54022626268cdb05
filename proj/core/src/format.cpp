#include "sipdg/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sipdg {

std::string format_sci(double value, int digits) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  std::string s(buf);
  const auto e = s.find('e');
  const int exponent = std::atoi(s.c_str() + e + 1);
  return s.substr(0, e) + "e" + std::to_string(exponent);
}

}  // namespace sipdg
