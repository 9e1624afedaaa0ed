#pragma once

// Per-element expressions shared by the serial and OpenMP kernels. Keeping a
// single definition is what makes the two backends bitwise identical.

#include <cmath>

namespace leibenson::detail {

/// Sign-preserving power sign(u)|u|^m.
inline double signed_power(double u, double m) {
  if (m == 1.0) {
    return u;
  }
  if (m == 2.0) {
    return u * std::abs(u);
  }
  return std::copysign(std::pow(std::abs(u), m), u);
}

/// Odd flux function |d|^{p-2} d, continuous at d = 0 for p > 1.
inline double p_flux(double d, double p) {
  if (p == 2.0) {
    return d;
  }
  if (p == 3.0) {
    return d * std::abs(d);
  }
  return std::copysign(std::pow(std::abs(d), p - 1.0), d);
}

/// Derivative (p-1)|d|^{p-2} of the flux function.
inline double p_flux_slope(double d, double p) {
  if (p == 2.0) {
    return 1.0;
  }
  if (p == 3.0) {
    return 2.0 * std::abs(d);
  }
  return (p - 1.0) * std::pow(std::abs(d), p - 2.0);
}

/// Derivative m|u|^{m-1} of the sign-preserving power.
inline double power_slope(double u, double m) {
  if (m == 1.0) {
    return 1.0;
  }
  if (m == 2.0) {
    return 2.0 * std::abs(u);
  }
  return m * std::pow(std::abs(u), m - 1.0);
}

}  // namespace leibenson::detail
