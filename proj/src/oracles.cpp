#include "leibenson/oracles.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "leibenson/errors.hpp"
#include "leibenson/geometry.hpp"
#include "leibenson/operators.hpp"

namespace leibenson {

BarenblattProfile::BarenblattProfile(const BarenblattSpec& spec, double kappa_scale) : spec_(spec) {
  const double m = spec.m;
  const double p = spec.p;
  const double N = spec.N;
  const double slow = m * (p - 1.0) - 1.0;
  if (!(slow > 0.0)) {
    throw ParameterError("Barenblatt profile: only the slow diffusion regime m(p-1) > 1 is supported");
  }
  if (!(spec.mass > 0.0) || !(spec.t0 > 0.0) || spec.N < 1) {
    throw ParameterError("Barenblatt profile: mass and t0 must be positive");
  }
  alpha_ = N / (N * slow + p);
  kappa_ = kappa_scale * slow / (m * p) * std::pow(alpha_ / N, 1.0 / (p - 1.0));
  gamma_ = p / (p - 1.0);
  exponent_ = (p - 1.0) / slow;

  // mass = omega (C/kappa)^{N/gamma} C^{exponent} * int_0^1 eta^{N-1} (1 - eta^gamma)^{exponent} d eta
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double shape = integrator.integrate(
      [&](double eta) { return std::pow(eta, N - 1.0) * std::pow(1.0 - std::pow(eta, gamma_), exponent_); }, 0.0,
      1.0);
  const double omega = unit_sphere_area(spec.N);
  const double base = spec.mass / (omega * std::pow(kappa_, -N / gamma_) * shape);
  constant_ = std::pow(base, 1.0 / (exponent_ + N / gamma_));
  xi_star_ = std::pow(constant_ / kappa_, 1.0 / gamma_);
}

double BarenblattProfile::value(double t, double r) const {
  if (!(t > 0.0)) {
    throw DomainError("Barenblatt profile: t must be positive");
  }
  const double scale = std::pow(t, -alpha_ / spec_.N);
  const double xi = r * scale;
  const double inner = constant_ - kappa_ * std::pow(xi, gamma_);
  if (!(inner > 0.0)) {
    return 0.0;
  }
  return std::pow(t, -alpha_) * std::pow(inner, exponent_);
}

double BarenblattProfile::support_radius(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("Barenblatt profile: t must be positive");
  }
  return xi_star_ * std::pow(t, alpha_ / spec_.N);
}

Field BarenblattProfile::sample(const RadialGrid& grid, double t) const {
  Field u(grid.size());
  const auto r = grid.centers();
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = value(t, r[i]);
  }
  return u;
}

double barenblatt_value(const BarenblattSpec& spec, double t, double r) {
  return BarenblattProfile(spec).value(t, r);
}

double pde_residual(const SpaceTimeFunction& field, const RadialGrid& grid, double t, double m, double p,
                    const ResidualOptions& options) {
  const std::size_t n = grid.size();
  const auto r = grid.centers();
  const double h = options.time_step_factor * t;
  Field u(n);
  Field ut(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = field(t, r[i]);
    ut[i] = (field(t + h, r[i]) - field(t - h, r[i])) / (2.0 * h);
  }
  const Field diffusion = dnl_operator(grid, u, m, p, Backend::serial);
  const double threshold = options.relative_threshold * sup_norm(u);

  std::vector<bool> admitted(n);
  for (std::size_t i = 0; i < n; ++i) {
    admitted[i] = u[i] > threshold;
  }
  const auto collar = static_cast<std::ptrdiff_t>(options.collar);
  std::vector<double> terms(n, 0.0);
  const auto volumes = grid.volumes();
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    bool keep = i + collar < static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - collar);
         keep && j <= std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1, i + collar); ++j) {
      keep = admitted[static_cast<std::size_t>(j)];
    }
    if (keep) {
      const auto k = static_cast<std::size_t>(i);
      terms[k] = std::abs(ut[k] - diffusion[k]) * volumes[k];
    }
  }
  return pairwise_sum(terms);
}

OdeReference::OdeReference(double q, double u0, double k) : q_(q), u0_(u0), k_(k) {
  if (!(q > 1.0)) {
    throw ParameterError("ode_reference: q must exceed 1");
  }
  if (!(u0 > 0.0)) {
    throw ParameterError("ode_reference: u0 must be positive");
  }
  if (!(k > 0.0)) {
    throw ParameterError("ode_reference: k must be positive");
  }
  if (std::isinf(k)) {
    switch_time_ = std::numeric_limits<double>::infinity();
    switch_value_ = std::numeric_limits<double>::infinity();
  } else {
    switch_value_ = std::pow(k, 1.0 / q);
    switch_time_ = u0 >= switch_value_
                       ? 0.0
                       : (std::pow(u0, 1.0 - q) - std::pow(switch_value_, 1.0 - q)) / (q - 1.0);
    if (u0 >= switch_value_) {
      switch_value_ = u0;
    }
  }
}

double OdeReference::blowup_time() const {
  if (std::isinf(k_)) {
    return std::pow(u0_, 1.0 - q_) / (q_ - 1.0);
  }
  return std::numeric_limits<double>::infinity();
}

double OdeReference::value(double t) const {
  if (!(t >= 0.0)) {
    throw DomainError("ode_reference: t must be non-negative");
  }
  if (t < switch_time_) {
    const double base = std::pow(u0_, 1.0 - q_) - (q_ - 1.0) * t;
    if (!(base > 0.0)) {
      return std::numeric_limits<double>::infinity();
    }
    return std::pow(base, 1.0 / (1.0 - q_));
  }
  return switch_value_ + k_ * (t - switch_time_);
}

}  // namespace leibenson
