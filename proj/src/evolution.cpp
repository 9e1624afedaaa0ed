#include "leibenson/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leibenson/errors.hpp"
#include "leibenson/kernels.hpp"
#include "leibenson/operators.hpp"

namespace leibenson {

namespace {

constexpr double kStiffnessFloor = 1e-12;
constexpr int kMaxHalvings = 40;

}  // namespace

std::vector<std::string> EvolutionParams::violations(int dimension) const {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& what) { out.push_back(what); };
  if (!(p > 1.0)) {
    fail("p must exceed 1");
  }
  if (!(m > 0.0)) {
    fail("m must be positive");
  }
  if (!(k > 0.0)) {
    fail("truncation level k must be positive");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    fail("epsilon must be finite and non-negative");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    fail("t_end must be positive and finite");
  }
  if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) {
    fail("cfl_safety must lie in (0, 1)");
  }
  if (!(blowup_threshold > 0.0)) {
    fail("blowup_threshold must be positive");
  }
  if (!(dt_max >= 0.0)) {
    fail("dt_max must be non-negative");
  }
  for (double s : norm_exponents) {
    if (!(s >= 1.0)) {
      fail("norm exponents must be >= 1");
    }
  }
  for (double ts : snapshot_times) {
    if (!(ts >= 0.0)) {
      fail("snapshot times must be non-negative");
    }
  }
  if (reaction_on && !allow_out_of_range) {
    const double mp = m * (p - 1.0);
    if (!(q > mp)) {
      fail("hypothesis q > m(p-1) violated");
    }
    if (!(mp >= 1.0)) {
      fail("hypothesis m(p-1) >= 1 violated");
    }
    if (!(p < dimension)) {
      fail("hypothesis p < N violated");
    }
    if (!(m > 1.0)) {
      fail("hypothesis m > 1 violated");
    }
  }
  if (reaction_on && !(q > 1.0)) {
    fail("reaction exponent q must exceed 1");
  }
  return out;
}

void EvolutionParams::validate(int dimension) const {
  const auto errors = violations(dimension);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid evolution parameters:";
    for (const auto& e : errors) {
      msg << "\n  - " << e;
    }
    throw ConfigError(msg.str());
  }
}

double truncate(double k, double x) {
  if (!(k > 0.0)) {
    throw ParameterError("truncation level must be positive");
  }
  if (x >= k) {
    return k;
  }
  if (x <= -k) {
    return -k;
  }
  return x;
}

double g_remainder(double k, double x) { return x - truncate(k, x); }

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::completed:
      return "completed";
    case Termination::blowup:
      return "blowup";
    case Termination::step_underflow:
      return "step_underflow";
  }
  return "unknown";
}

double adaptive_dt(std::span<const double> u, const EvolutionParams& params, const RadialGrid& grid,
                   double remaining) {
  const double sigma = params.cfl_safety;
  double dt = params.effective_dt_max();
  if (params.diffusion_on) {
    const double stiffness =
        kernels::max_diffusivity(params.backend, grid, u, params.m, params.p) + params.epsilon;
    const double dr = grid.spacing();
    dt = std::min(dt, sigma * dr * dr / (grid.stencil_factor() * std::max(stiffness, kStiffnessFloor)));
  }
  if (params.reaction_on) {
    const double umax = sup_norm(u);
    const double growth = umax > 0.0 ? params.q * std::pow(umax, params.q - 1.0) : 0.0;
    dt = std::min(dt, sigma / (growth + kStiffnessFloor));
  }
  return std::min(dt, remaining);
}

Field step(std::span<const double> u, const EvolutionParams& params, const RadialGrid& grid, double dt,
           StepDiagnostics* diagnostics) {
  const std::size_t n = grid.size();
  Field rate(n, 0.0);
  double boundary_flux = 0.0;
  if (params.diffusion_on) {
    boundary_flux = kernels::flux_divergence(params.backend, grid, u, params.m, params.p, rate);
    if (params.epsilon > 0.0) {
      Field viscous(n);
      boundary_flux += params.epsilon * kernels::flux_divergence(params.backend, grid, u, 1.0, 2.0, viscous);
      for (std::size_t i = 0; i < n; ++i) {
        rate[i] += params.epsilon * viscous[i];
      }
    }
  }
  const auto volumes = grid.volumes();
  Field reaction_terms;
  if (params.reaction_on) {
    reaction_terms.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] > 0.0) {
        const double source = std::isinf(params.k) ? abs_pow(u[i], params.q)
                                                   : truncate(params.k, abs_pow(u[i], params.q));
        rate[i] += source;
        reaction_terms[i] = source * volumes[i];
      }
    }
  }

  Field next(n);
  std::vector<double> clipped(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = u[i] + dt * rate[i];
    if (!std::isfinite(v)) {
      throw NumericalError("step: non-finite update in cell " + std::to_string(i));
    }
    if (v < 0.0) {
      clipped[i] = -v * volumes[i];
      next[i] = 0.0;
    } else {
      next[i] = v;
    }
  }
  if (diagnostics != nullptr) {
    diagnostics->clipped_mass = pairwise_sum(clipped);
    diagnostics->boundary_outflux = -dt * boundary_flux;
    diagnostics->reaction_mass = params.reaction_on ? dt * pairwise_sum(reaction_terms) : 0.0;
  }
  return next;
}

const Snapshot* SolveRun::snapshot_at(double t) const {
  for (const auto& s : snapshots) {
    if (s.t == t) {
      return &s;
    }
  }
  return nullptr;
}

SolveRun solve(Field u0, const EvolutionParams& params, const RadialGrid& grid) {
  std::vector<EnsembleMember> members;
  members.push_back(EnsembleMember{std::move(u0), params, grid});
  return std::move(solve_lockstep(std::move(members)).front());
}

std::vector<SolveRun> solve_lockstep(std::vector<EnsembleMember> members) {
  if (members.empty()) {
    throw ConfigError("solve: empty ensemble");
  }
  const double t_end = members.front().params.t_end;
  std::vector<double> snaps = members.front().params.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  std::erase_if(snaps, [t_end](double s) { return s > t_end; });

  std::vector<SolveRun> runs;
  runs.reserve(members.size());
  for (auto& member : members) {
    member.params.validate(member.grid.manifold().dimension());
    if (member.params.t_end != t_end) {
      throw ConfigError("lockstep members must share t_end");
    }
    if (member.u0.size() != member.grid.size()) {
      throw ConfigError("initial datum size does not match the grid");
    }
    require_finite(member.u0, "initial datum");
    for (double v : member.u0) {
      if (v < 0.0) {
        throw ConfigError("initial datum must be non-negative");
      }
    }
    SolveRun run{member.params, member.grid, {}, NormHistory(member.params.norm_exponents), {}, member.u0,
                 member.u0, 0.0, {}};
    run.history.record(0.0, 0.0, run.grid, run.final_state);
    run.diagnostics.initial_mass = power_integral(run.grid, run.final_state, 1.0);
    runs.push_back(std::move(run));
  }

  std::size_t next_snap = 0;
  auto store_snapshots = [&](double t) {
    while (next_snap < snaps.size() && snaps[next_snap] <= t) {
      if (snaps[next_snap] == t) {
        for (auto& run : runs) {
          run.snapshots.push_back(Snapshot{t, run.final_state});
        }
      }
      ++next_snap;
    }
  };
  auto finish = [&](Termination kind, double t) {
    for (auto& run : runs) {
      run.final_time = t;
      const double sup = sup_norm(run.final_state);
      const bool exploded = sup >= run.params.blowup_threshold;
      run.termination = TerminationEvent{kind == Termination::blowup && !exploded ? Termination::completed : kind,
                                         t, sup};
    }
    return std::move(runs);
  };
  auto any_blowup = [&] {
    return std::any_of(runs.begin(), runs.end(), [](const SolveRun& run) {
      return sup_norm(run.final_state) >= run.params.blowup_threshold;
    });
  };

  double t = 0.0;
  store_snapshots(t);
  if (any_blowup()) {
    return finish(Termination::blowup, t);
  }

  std::vector<Field> next(runs.size());
  std::vector<StepDiagnostics> diag(runs.size());
  while (t < t_end) {
    double dt = t_end - t;
    for (const auto& run : runs) {
      dt = std::min(dt, adaptive_dt(run.final_state, run.params, run.grid, t_end - t));
    }
    double target = t_end;
    if (next_snap < snaps.size()) {
      target = std::min(target, snaps[next_snap]);
    }
    bool lands = false;
    if (t + dt >= target) {
      dt = target - t;
      lands = true;
    }

    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      try {
        for (std::size_t j = 0; j < runs.size(); ++j) {
          next[j] = step(runs[j].final_state, runs[j].params, runs[j].grid, dt, &diag[j]);
        }
        accepted = true;
        break;
      } catch (const NumericalError&) {
        dt *= 0.5;
        lands = false;
        for (auto& run : runs) {
          ++run.diagnostics.halvings;
        }
      }
    }
    const double t_next = lands ? target : t + dt;
    if (!accepted || !(t_next > t)) {
      return finish(Termination::step_underflow, t);
    }

    t = t_next;
    for (std::size_t j = 0; j < runs.size(); ++j) {
      auto& run = runs[j];
      run.final_state = std::move(next[j]);
      run.diagnostics.accepted_steps += 1;
      run.diagnostics.clipped_mass += diag[j].clipped_mass;
      run.diagnostics.boundary_outflux += diag[j].boundary_outflux;
      run.diagnostics.reaction_mass += diag[j].reaction_mass;
      run.history.record(t, dt, run.grid, run.final_state);
    }
    store_snapshots(t);
    if (any_blowup()) {
      return finish(Termination::blowup, t);
    }
  }
  return finish(Termination::completed, t);
}

}  // namespace leibenson
