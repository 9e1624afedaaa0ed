#pragma once

#include <span>

#include "leibenson/grid.hpp"
#include "leibenson/kernels.hpp"

namespace leibenson {

/// Discrete Delta_p(u^m) with homogeneous Dirichlet data at r = R.
/// Throws ParameterError for p <= 1 or m <= 0, NumericalError on non-finite input.
Field dnl_operator(const RadialGrid& grid, std::span<const double> u, double m, double p,
                   Backend backend = default_backend());

/// Discrete Laplace-Beltrami operator; identical to dnl_operator(u, 1, 2).
Field linear_laplacian(const RadialGrid& grid, std::span<const double> u,
                       Backend backend = default_backend());

/// (sum |u_i|^s V_i)^{1/s}; s = +infinity gives max |u_i|.
double lebesgue_norm(const RadialGrid& grid, std::span<const double> u, double s);

/// sum |u_i|^s V_i, the s-th power of the norm (s finite, >= 1).
double power_integral(const RadialGrid& grid, std::span<const double> u, double s);

double sup_norm(std::span<const double> u);

/// |x|^s with exact fast paths for small integer and half-integer exponents.
double abs_pow(double x, double s);

/// Throws NumericalError naming `what` if any entry is NaN or infinite.
void require_finite(std::span<const double> u, const char* what);

}  // namespace leibenson
