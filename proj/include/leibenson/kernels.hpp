#pragma once

#include <span>

#include "leibenson/grid.hpp"

namespace leibenson {

/// Execution backend of the per-cell kernels. Both produce bitwise-identical
/// results: every output entry is computed by the same expression, only the
/// distribution of cells over threads differs.
enum class Backend { serial, openmp };

Backend default_backend();
bool openmp_available();

namespace kernels {

/// Divergence of the face flux A |D|^{p-2} D of w = u^m, per unit cell volume.
///
/// D is the two-point difference (w_{i+1} - w_i)/dr; beyond the outer face a
/// ghost value w = 0 is used, the origin face carries no flux. `out` must have
/// grid.size() entries. Returns the boundary term A_{n-1/2} Phi_{n-1/2}.
double flux_divergence_serial(const RadialGrid& grid, std::span<const double> u, double m, double p,
                              std::span<double> out);
double flux_divergence_openmp(const RadialGrid& grid, std::span<const double> u, double m, double p,
                              std::span<double> out);

/// max over faces of (p-1)|D|^{p-2} m ubar^{m-1}, ubar the larger neighbour.
/// For p < 2 the slope is floored at 1e-3 of the largest face slope.
double max_diffusivity_serial(const RadialGrid& grid, std::span<const double> u, double m, double p);
double max_diffusivity_openmp(const RadialGrid& grid, std::span<const double> u, double m, double p);

inline double flux_divergence(Backend backend, const RadialGrid& grid, std::span<const double> u, double m,
                              double p, std::span<double> out) {
  return backend == Backend::openmp ? flux_divergence_openmp(grid, u, m, p, out)
                                    : flux_divergence_serial(grid, u, m, p, out);
}

inline double max_diffusivity(Backend backend, const RadialGrid& grid, std::span<const double> u, double m,
                              double p) {
  return backend == Backend::openmp ? max_diffusivity_openmp(grid, u, m, p)
                                    : max_diffusivity_serial(grid, u, m, p);
}

}  // namespace kernels
}  // namespace leibenson
