#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "leibenson/evolution.hpp"
#include "leibenson/geometry.hpp"

namespace leibenson {

/// One rung of the approximation ladder: truncation level, ball radius and
/// datum cap/cutoff radius.
struct LadderLevel {
  double k = kInfinity;
  double R = 1.0;
  double h = kInfinity;
};

using RadialProfile = std::function<double(double r)>;

/// Smooth radial cutoff: 1 on [0, 1], quintic decay to 0 at 2.
double ladder_cutoff(double x);

/// u_{0,h}(r) = min(u0(r), h) * cutoff(r / h); h = infinity returns u0.
double ladder_datum(const RadialProfile& u0, double h, double r);

struct LadderConfig {
  ModelManifold manifold = ModelManifold::euclidean(3);
  /// Cell size shared by every level so that cells align across radii.
  double dr = 1.0 / 64.0;
  /// k is overridden per level.
  EvolutionParams params;
  RadialProfile datum;
  std::vector<LadderLevel> levels;
  std::vector<double> probe_times;
  double tolerance = 1e-10;
};

struct LevelProbe {
  double t = 0.0;
  double sup = 0.0;
  double l1 = 0.0;
};

struct LevelResult {
  LadderLevel level;
  std::size_t n_cells = 0;
  Termination termination = Termination::completed;
  std::vector<LevelProbe> probes;
};

/// Differences between level j and level j + 1 at one probe time.
struct LevelGap {
  std::size_t level = 0;
  double t = 0.0;
  double sup_diff = 0.0;
  double l1_diff = 0.0;
  /// Largest (u_j - u_{j+1})_+, zero when the lower level sits below.
  double overshoot = 0.0;
};

struct LadderReport {
  std::vector<LevelResult> levels;
  std::vector<LevelGap> gaps;
  /// First level from which every consecutive gap is below tolerance.
  std::optional<std::size_t> converged_at;
  /// u_j <= u_{j+1} cellwise at every probe time.
  bool pointwise_monotone = true;
  /// Probe sup and L1 norms nondecreasing along the ladder.
  bool norms_monotone = true;
  /// Every probe time was reached by every level.
  bool complete = true;

  double max_gap(std::size_t level) const;
};

/// Runs every level in one lockstep ensemble and compares consecutive levels
/// at the probe times. ConfigError if (k, R, h) is not nondecreasing or a
/// radius is not a multiple of dr.
LadderReport ladder_run(const LadderConfig& config);

}  // namespace leibenson
