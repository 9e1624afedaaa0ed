#include "leibenson/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leibenson/errors.hpp"

namespace leibenson {

void require_finite(std::span<const double> u, const char* what) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      throw NumericalError(std::string(what) + ": non-finite value in cell " + std::to_string(i));
    }
  }
}

namespace {

void check_field(const RadialGrid& grid, std::span<const double> u) {
  if (u.size() != grid.size()) {
    throw DomainError("field size " + std::to_string(u.size()) + " does not match grid size " +
                      std::to_string(grid.size()));
  }
}

}  // namespace

Field dnl_operator(const RadialGrid& grid, std::span<const double> u, double m, double p, Backend backend) {
  if (!(p > 1.0)) {
    throw ParameterError("dnl_operator: p must exceed 1");
  }
  if (!(m > 0.0)) {
    throw ParameterError("dnl_operator: m must be positive");
  }
  check_field(grid, u);
  require_finite(u, "dnl_operator input");
  Field out(grid.size());
  kernels::flux_divergence(backend, grid, u, m, p, out);
  return out;
}

Field linear_laplacian(const RadialGrid& grid, std::span<const double> u, Backend backend) {
  return dnl_operator(grid, u, 1.0, 2.0, backend);
}

double abs_pow(double x, double s) {
  const double a = std::abs(x);
  if (s == 1.0) {
    return a;
  }
  if (s == 2.0) {
    return a * a;
  }
  if (s == 3.0) {
    return a * a * a;
  }
  if (s == 4.0) {
    const double a2 = a * a;
    return a2 * a2;
  }
  if (s == 1.5) {
    return a * std::sqrt(a);
  }
  return std::pow(a, s);
}

double sup_norm(std::span<const double> u) {
  double out = 0.0;
  for (double v : u) {
    out = std::max(out, std::abs(v));
  }
  return out;
}

double power_integral(const RadialGrid& grid, std::span<const double> u, double s) {
  if (!(s >= 1.0) || !std::isfinite(s)) {
    throw ParameterError("power_integral: exponent must be finite and >= 1");
  }
  check_field(grid, u);
  const auto volumes = grid.volumes();
  std::vector<double> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    terms[i] = u[i] == 0.0 ? 0.0 : abs_pow(u[i], s) * volumes[i];
  }
  return pairwise_sum(terms);
}

double lebesgue_norm(const RadialGrid& grid, std::span<const double> u, double s) {
  if (!(s >= 1.0)) {
    throw ParameterError("lebesgue_norm: exponent must be >= 1 or infinity");
  }
  check_field(grid, u);
  if (std::isinf(s)) {
    return sup_norm(u);
  }
  const double integral = power_integral(grid, u, s);
  return s == 1.0 ? integral : std::pow(integral, 1.0 / s);
}

}  // namespace leibenson
