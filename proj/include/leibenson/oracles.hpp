#pragma once

#include <functional>

#include "leibenson/grid.hpp"

namespace leibenson {

/// Source-type self-similar solution of u_t = Delta_p u^m in R^N (slow diffusion).
struct BarenblattSpec {
  double m = 2.0;
  double p = 2.0;
  int N = 3;
  double mass = 1.0;
  /// Reference time at which the profile is used as initial datum.
  double t0 = 1.0;
};

/// u(t, r) = t^{-alpha} (C - kappa xi^{p/(p-1)})_+^{(p-1)/(m(p-1)-1)}, xi = r t^{-alpha/N},
/// alpha = N/(N(m(p-1)-1)+p), kappa = (m(p-1)-1)/(m p) (alpha/N)^{1/(p-1)}.
/// C is fixed by the mass through a quadrature of the profile.
class BarenblattProfile {
 public:
  explicit BarenblattProfile(const BarenblattSpec& spec, double kappa_scale = 1.0);

  double value(double t, double r) const;
  /// Radius of the support at time t.
  double support_radius(double t) const;
  /// Samples the profile at the cell centres of `grid`.
  Field sample(const RadialGrid& grid, double t) const;

  const BarenblattSpec& spec() const { return spec_; }
  double alpha() const { return alpha_; }
  double kappa() const { return kappa_; }
  double constant() const { return constant_; }

 private:
  BarenblattSpec spec_;
  double alpha_;
  double kappa_;
  double gamma_;     // p/(p-1)
  double exponent_;  // (p-1)/(m(p-1)-1)
  double constant_;
  double xi_star_;
};

double barenblatt_value(const BarenblattSpec& spec, double t, double r);

using SpaceTimeFunction = std::function<double(double t, double r)>;

struct ResidualOptions {
  /// Cells with u <= threshold * max u are excluded.
  double relative_threshold = 1e-3;
  /// Cells within this many cells of an excluded cell or of r = R are excluded as well.
  int collar = 3;
  /// Central difference in time uses step factor * t.
  double time_step_factor = 1e-5;
};

/// L^1 norm over the admitted cells of u_t - Delta_p u^m for a sampled
/// space-time field, u_t by central differences in time.
double pde_residual(const SpaceTimeFunction& field, const RadialGrid& grid, double t, double m, double p,
                    const ResidualOptions& options = {});

/// Exact solution of the reaction ODE u' = T_k(u^q), u(0) = u0.
class OdeReference {
 public:
  OdeReference(double q, double u0, double k);

  /// u0^{1-q}/(q-1) for k = infinity, +infinity otherwise.
  double blowup_time() const;
  /// Time at which u^q reaches k (0 if it starts above, +infinity for k = infinity).
  double switch_time() const { return switch_time_; }
  double value(double t) const;

 private:
  double q_;
  double u0_;
  double k_;
  double switch_time_;
  double switch_value_;
};

}  // namespace leibenson
