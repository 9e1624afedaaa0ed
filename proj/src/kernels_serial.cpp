// Reference implementation of the per-cell kernels. The OpenMP variants in
// kernels_openmp.cpp must agree with these bit for bit.

#include <algorithm>
#include <cmath>
#include <vector>

#include "kernel_math.hpp"
#include "leibenson/kernels.hpp"

namespace leibenson::kernels {

double flux_divergence_serial(const RadialGrid& grid, std::span<const double> u, double m, double p,
                              std::span<double> out) {
  const std::size_t n = grid.size();
  const double inv_dr = 1.0 / grid.spacing();
  const auto areas = grid.face_areas();
  const auto volumes = grid.volumes();

  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = detail::signed_power(u[i], m);
  }
  w[n] = 0.0;

  std::vector<double> flux(n);
  for (std::size_t j = 0; j < n; ++j) {
    flux[j] = areas[j] * detail::p_flux((w[j + 1] - w[j]) * inv_dr, p);
  }
  out[0] = flux[0] / volumes[0];
  for (std::size_t i = 1; i < n; ++i) {
    out[i] = (flux[i] - flux[i - 1]) / volumes[i];
  }
  return flux[n - 1];
}

double max_diffusivity_serial(const RadialGrid& grid, std::span<const double> u, double m, double p) {
  const std::size_t n = grid.size();
  const double inv_dr = 1.0 / grid.spacing();
  auto neighbour = [&](std::size_t j) { return j < n ? u[j] : 0.0; };

  double slope_floor = 0.0;
  if (p < 2.0) {
    double max_slope = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = (detail::signed_power(neighbour(j + 1), m) - detail::signed_power(u[j], m)) * inv_dr;
      max_slope = std::max(max_slope, std::abs(d));
    }
    slope_floor = 1e-3 * max_slope;
  }

  double result = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = (detail::signed_power(neighbour(j + 1), m) - detail::signed_power(u[j], m)) * inv_dr;
    const double ubar = std::max(std::abs(u[j]), std::abs(neighbour(j + 1)));
    if (ubar == 0.0) {
      continue;
    }
    const double slope = p < 2.0 ? detail::p_flux_slope(std::max(std::abs(d), slope_floor), p)
                                 : detail::p_flux_slope(d, p);
    if (std::isfinite(slope)) {
      result = std::max(result, slope * detail::power_slope(ubar, m));
    }
  }
  return result;
}

}  // namespace leibenson::kernels
