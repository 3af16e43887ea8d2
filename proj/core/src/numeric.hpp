#pragma once

#include <cmath>

namespace mwk::detail {

// |x|^p with exact squaring for the Euclidean case.
inline double abs_pow(double x, double p) {
  if (p == 2.0) return x * x;
  return std::pow(std::abs(x), p);
}

}  // namespace mwk::detail
