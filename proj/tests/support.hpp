#pragma once

// Shared fixtures for the test binaries.

#include <cmath>
#include <numbers>

#include "leibenson/evolution.hpp"
#include "leibenson/grid.hpp"

namespace test_support {

/// A (1 - r^2/rho^2)_+^3, the bump datum of the harness, sampled at centres.
inline leibenson::Field bump(const leibenson::RadialGrid& grid, double amplitude, double radius) {
  leibenson::Field u(grid.size());
  const auto r = grid.centers();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = 1.0 - (r[i] / radius) * (r[i] / radius);
    u[i] = x > 0.0 ? amplitude * x * x * x : 0.0;
  }
  return u;
}

/// Source-type constant of the m = 2, p = 2, N = 3 profile (C - kappa xi^2)_+ with
/// kappa = 1/20, from mass = 4 pi (2/15) C^{5/2} / kappa^{3/2}.
inline double pme3_constant(double mass) {
  const double kappa = 1.0 / 20.0;
  return std::pow(mass * 15.0 * std::pow(kappa, 1.5) / (8.0 * std::numbers::pi), 0.4);
}

inline double pme3_value(double mass, double t, double r) {
  const double xi = r * std::pow(t, -0.2);
  const double inner = pme3_constant(mass) - xi * xi / 20.0;
  return inner > 0.0 ? std::pow(t, -0.6) * inner : 0.0;
}

}  // namespace test_support
