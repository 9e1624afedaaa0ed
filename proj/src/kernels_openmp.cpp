#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernel_math.hpp"
#include "leibenson/kernels.hpp"

namespace leibenson {

bool openmp_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

Backend default_backend() { return openmp_available() ? Backend::openmp : Backend::serial; }

namespace kernels {

double flux_divergence_openmp(const RadialGrid& grid, std::span<const double> u, double m, double p,
                              std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  const double inv_dr = 1.0 / grid.spacing();
  const double* areas = grid.face_areas().data();
  const double* volumes = grid.volumes().data();
  const double* uu = u.data();
  double* res = out.data();

  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  std::vector<double> flux(static_cast<std::size_t>(n));
  double* wp = w.data();
  double* fp = flux.data();
  wp[n] = 0.0;

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      wp[i] = detail::signed_power(uu[i], m);
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      fp[j] = areas[j] * detail::p_flux((wp[j + 1] - wp[j]) * inv_dr, p);
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      res[i] = i == 0 ? fp[0] / volumes[0] : (fp[i] - fp[i - 1]) / volumes[i];
    }
  }
  return fp[n - 1];
}

double max_diffusivity_openmp(const RadialGrid& grid, std::span<const double> u, double m, double p) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  const double inv_dr = 1.0 / grid.spacing();
  const double* uu = u.data();
  auto neighbour = [&](std::ptrdiff_t j) { return j < n ? uu[j] : 0.0; };

  double slope_floor = 0.0;
  if (p < 2.0) {
    double max_slope = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_slope)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const double d = (detail::signed_power(neighbour(j + 1), m) - detail::signed_power(uu[j], m)) * inv_dr;
      max_slope = std::max(max_slope, std::abs(d));
    }
    slope_floor = 1e-3 * max_slope;
  }

  double result = 0.0;
#pragma omp parallel for schedule(static) reduction(max : result)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double d = (detail::signed_power(neighbour(j + 1), m) - detail::signed_power(uu[j], m)) * inv_dr;
    const double ubar = std::max(std::abs(uu[j]), std::abs(neighbour(j + 1)));
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

}  // namespace kernels
}  // namespace leibenson
