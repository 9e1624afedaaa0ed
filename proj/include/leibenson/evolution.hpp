#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "leibenson/grid.hpp"
#include "leibenson/kernels.hpp"
#include "leibenson/norm_history.hpp"

namespace leibenson {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Parameters of u_t = Delta_p u^m + eps Delta u + T_k(u^q) on a ball with
/// zero Dirichlet data, plus the controls of the explicit stepper.
struct EvolutionParams {
  double m = 2.0;
  double p = 2.0;
  double q = 3.0;
  /// Truncation level of the reaction; infinity leaves u^q untouched.
  double k = kInfinity;
  double epsilon = 0.0;
  bool reaction_on = true;
  /// Test hook: switches off both diffusion terms (pointwise reaction ODE).
  bool diffusion_on = true;
  double t_end = 1.0;
  double cfl_safety = 0.9;
  double blowup_threshold = 1e6;
  /// Largest admissible step; 0 selects t_end / 1000.
  double dt_max = 0.0;
  std::vector<double> norm_exponents;
  /// Times at which the state is stored; the stepper lands on them exactly.
  std::vector<double> snapshot_times;
  /// Lifts the (m, p, q) range checks for exploratory scans.
  bool allow_out_of_range = false;
  Backend backend = default_backend();

  double effective_dt_max() const { return dt_max > 0.0 ? dt_max : t_end / 1000.0; }

  /// Every violated constraint for a manifold of the given dimension, empty if valid.
  std::vector<std::string> violations(int dimension) const;
  /// Throws ConfigError listing all violations.
  void validate(int dimension) const;
};

/// T_k(x): clamp of x to [-k, k].
double truncate(double k, double x);
/// G_k(x) = x - T_k(x).
double g_remainder(double k, double x);

/// Stable explicit step for the current state.
///
/// dt = sigma dr^2 / (g (D_eff + eps)) with g the grid stencil factor and
/// D_eff the largest face diffusivity, further limited by
/// sigma / (q max(u)^{q-1}) when the reaction is on, by dt_max and by `remaining`.
double adaptive_dt(std::span<const double> u, const EvolutionParams& params, const RadialGrid& grid,
                   double remaining = kInfinity);

/// Bookkeeping of one explicit update.
struct StepDiagnostics {
  /// Mass added by clipping negative undershoots to zero.
  double clipped_mass = 0.0;
  /// -dt * A Phi at the outer face: mass leaving through r = R.
  double boundary_outflux = 0.0;
  /// dt * sum T_k(u^q) V.
  double reaction_mass = 0.0;
};

/// Forward Euler update u + dt (Delta_p u^m + eps Delta u + T_k(u^q)), clipped at 0.
/// Throws NumericalError if the update is not finite.
Field step(std::span<const double> u, const EvolutionParams& params, const RadialGrid& grid, double dt,
           StepDiagnostics* diagnostics = nullptr);

enum class Termination { completed, blowup, step_underflow };

std::string to_string(Termination termination);

struct TerminationEvent {
  Termination kind = Termination::completed;
  double time = 0.0;
  double sup_norm = 0.0;
};

struct Snapshot {
  double t = 0.0;
  Field u;
};

struct RunDiagnostics {
  std::size_t accepted_steps = 0;
  std::size_t halvings = 0;
  double initial_mass = 0.0;
  double clipped_mass = 0.0;
  double boundary_outflux = 0.0;
  double reaction_mass = 0.0;

  /// mass(t) - mass(0) + outflux - reaction - clipped, zero up to rounding.
  double mass_defect(double final_mass) const {
    return final_mass - initial_mass + boundary_outflux - reaction_mass - clipped_mass;
  }
};

/// Full trajectory record of one solve.
struct SolveRun {
  EvolutionParams params;
  RadialGrid grid;
  std::vector<Snapshot> snapshots;
  NormHistory history;
  TerminationEvent termination;
  Field initial_state;
  Field final_state;
  double final_time = 0.0;
  RunDiagnostics diagnostics;

  bool blew_up() const { return termination.kind == Termination::blowup; }
  const Snapshot* snapshot_at(double t) const;
};

/// Advances u0 until t_end, blow-up (sup-norm >= blowup_threshold) or step underflow.
SolveRun solve(Field u0, const EvolutionParams& params, const RadialGrid& grid);

/// One member of a lockstep ensemble.
struct EnsembleMember {
  Field u0;
  EvolutionParams params;
  RadialGrid grid;
};

/// Advances several problems with a shared step sequence (the minimum of the
/// members' admissible steps), so that the monotone scheme compares their
/// states cell by cell at every accepted time. All members share t_end and
/// snapshot times (taken from the first member); the ensemble stops when
/// any member blows up or underflows.
std::vector<SolveRun> solve_lockstep(std::vector<EnsembleMember> members);

}  // namespace leibenson
