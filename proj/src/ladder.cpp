#include "leibenson/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leibenson/errors.hpp"
#include "leibenson/inequalities.hpp"
#include "leibenson/operators.hpp"

namespace leibenson {

double ladder_cutoff(double x) { return quintic_taper(0.9 + 0.1 * (x - 1.0)); }

double ladder_datum(const RadialProfile& u0, double h, double r) {
  const double value = u0(r);
  if (std::isinf(h)) {
    return value;
  }
  return std::min(value, h) * ladder_cutoff(r / h);
}

double LadderReport::max_gap(std::size_t level) const {
  double worst = 0.0;
  for (const auto& g : gaps) {
    if (g.level == level) {
      worst = std::max({worst, g.sup_diff, g.l1_diff});
    }
  }
  return worst;
}

namespace {

void validate(const LadderConfig& config) {
  std::vector<std::string> errors;
  if (!config.datum) {
    errors.emplace_back("ladder datum is missing");
  }
  if (config.levels.size() < 2) {
    errors.emplace_back("ladder needs at least two levels");
  }
  if (!(config.dr > 0.0)) {
    errors.emplace_back("ladder spacing dr must be positive");
  }
  for (std::size_t j = 0; j < config.levels.size(); ++j) {
    const auto& level = config.levels[j];
    if (!(level.k > 0.0) || !(level.h > 0.0) || !(level.R > 0.0)) {
      errors.emplace_back("ladder level " + std::to_string(j) + ": k, R and h must be positive");
    }
    if (config.dr > 0.0) {
      const double cells = level.R / config.dr;
      if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
        errors.emplace_back("ladder level " + std::to_string(j) + ": R is not a multiple of dr");
      }
    }
    if (j > 0) {
      const auto& prev = config.levels[j - 1];
      if (level.k < prev.k || level.R < prev.R || level.h < prev.h) {
        errors.emplace_back("ladder level " + std::to_string(j) + " is not above level " + std::to_string(j - 1));
      }
    }
  }
  for (std::size_t i = 1; i < config.probe_times.size(); ++i) {
    if (!(config.probe_times[i] > config.probe_times[i - 1])) {
      errors.emplace_back("ladder probe times must be strictly increasing");
      break;
    }
  }
  if (config.probe_times.empty()) {
    errors.emplace_back("ladder needs at least one probe time");
  }
  if (!errors.empty()) {
    std::string message = "invalid ladder:";
    for (const auto& e : errors) {
      message += "\n  " + e;
    }
    throw ConfigError(message);
  }
}

}  // namespace

LadderReport ladder_run(const LadderConfig& config) {
  validate(config);
  std::vector<EnsembleMember> members;
  members.reserve(config.levels.size());
  for (const auto& level : config.levels) {
    const auto n = static_cast<std::size_t>(std::llround(level.R / config.dr));
    RadialGrid grid(config.manifold, level.R, n);
    Field u0(n);
    const auto r = grid.centers();
    for (std::size_t i = 0; i < n; ++i) {
      u0[i] = ladder_datum(config.datum, level.h, r[i]);
    }
    EvolutionParams params = config.params;
    params.k = level.k;
    params.snapshot_times = config.probe_times;
    members.push_back(EnsembleMember{std::move(u0), std::move(params), std::move(grid)});
  }
  const std::vector<SolveRun> runs = solve_lockstep(std::move(members));

  LadderReport report;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    LevelResult result;
    result.level = config.levels[j];
    result.n_cells = runs[j].grid.size();
    result.termination = runs[j].termination.kind;
    for (const auto& snap : runs[j].snapshots) {
      result.probes.push_back(LevelProbe{snap.t, sup_norm(snap.u), lebesgue_norm(runs[j].grid, snap.u, 1.0)});
    }
    if (runs[j].snapshots.size() < config.probe_times.size()) {
      report.complete = false;
    }
    report.levels.push_back(std::move(result));
  }

  for (std::size_t j = 0; j + 1 < runs.size(); ++j) {
    const SolveRun& lower = runs[j];
    const SolveRun& upper = runs[j + 1];
    const std::size_t shared = std::min(lower.snapshots.size(), upper.snapshots.size());
    for (std::size_t s = 0; s < shared; ++s) {
      const Field& a = lower.snapshots[s].u;
      const Field& b = upper.snapshots[s].u;
      // Lower levels live on smaller balls; outside they are zero.
      Field diff(b.size());
      double overshoot = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double ai = i < a.size() ? a[i] : 0.0;
        diff[i] = std::abs(b[i] - ai);
        overshoot = std::max(overshoot, ai - b[i]);
      }
      LevelGap gap{j, lower.snapshots[s].t, sup_norm(diff), lebesgue_norm(upper.grid, diff, 1.0), overshoot};
      if (overshoot > 0.0) {
        report.pointwise_monotone = false;
      }
      const auto& pa = report.levels[j].probes[s];
      const auto& pb = report.levels[j + 1].probes[s];
      const double slack = config.tolerance;
      if (pa.sup > pb.sup + slack || pa.l1 > pb.l1 + slack) {
        report.norms_monotone = false;
      }
      report.gaps.push_back(gap);
    }
  }

  for (std::size_t start = 0; start + 1 < runs.size(); ++start) {
    bool all_small = true;
    for (std::size_t j = start; j + 1 < runs.size() && all_small; ++j) {
      all_small = report.max_gap(j) < config.tolerance;
    }
    if (all_small) {
      report.converged_at = start;
      break;
    }
  }
  return report;
}

}  // namespace leibenson
