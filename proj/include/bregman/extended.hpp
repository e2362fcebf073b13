#pragma once

#include <cmath>
#include <limits>

namespace bregman {

// Extended-real scalars: finite doubles or +inf. -inf is never stored.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double v) { return std::isinf(v) && v > 0; }
inline bool is_finite(double v) { return std::isfinite(v); }

// Subtraction with the convention +inf - (+inf) = +inf and
// r - (+inf) = +inf (the latter only arises outside dom(phi), where the
// defining formulas assign +inf anyway).
inline double ext_sub(double a, double b) {
  if (is_inf(a) || is_inf(b)) return kInf;
  return a - b;
}

}  // namespace bregman
