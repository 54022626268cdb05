#pragma once

#include <string>

namespace sipdg {

/// Scientific notation with `digits` significant digits and a bare exponent,
/// e.g. 0.03536 -> "3.536e-2".
std::string format_sci(double value, int digits = 4);

}  // namespace sipdg
