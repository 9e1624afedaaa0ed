#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "leibenson/geometry.hpp"
#include "leibenson/grid.hpp"

namespace leibenson {

using TrialParams = std::array<double, 2>;

enum class TrialFamilyKind {
  exp_taper,  ///< exp(-b r) tapered to zero at r = lambda; params (b, lambda)
  power,      ///< (1 + (r/lambda)^2)^{-b} tapered at r = ratio * lambda; params (lambda, b)
  bump,       ///< (1 - ((r - c)/w)^2)_+^3; params (w, c)
};

/// Two-parameter family of compactly supported radial trial functions.
struct TrialFamily {
  TrialFamilyKind kind = TrialFamilyKind::exp_taper;
  TrialParams lower{};
  TrialParams upper{};
  /// Coordinates searched on a logarithmic scale.
  std::array<bool, 2> log_scale{false, false};
  /// Index of the dilation parameter (the one doubled by sweeps).
  std::size_t dilation_index = 0;
  /// Support radius over lambda for the power family.
  double support_ratio = 50.0;

  static TrialFamily exp_taper(double b_lo, double b_hi, double lambda_lo, double lambda_hi);
  static TrialFamily power(double lambda_lo, double lambda_hi, double b_lo, double b_hi, double support_ratio = 50.0);
  static TrialFamily bump(double w_lo, double w_hi, double c_lo, double c_hi);

  double value(const TrialParams& params, double r) const;
  double support_radius(const TrialParams& params) const;
  std::string name() const;
};

/// Smooth cutoff: 1 on [0, 0.9], quintic decay to 0 on [0.9, 1], 0 beyond.
double quintic_taper(double x);

struct QuotientProbe {
  ModelManifold manifold = ModelManifold::euclidean(3);
  double p = 2.0;
  TrialFamily family;
  /// Cells of the grid built over the support of each trial member.
  std::size_t n_cells = 4096;
  /// Upper bound on the cell size; more cells are used when the support is large.
  double max_spacing = std::numeric_limits<double>::infinity();
  std::size_t max_cells = std::size_t{1} << 16;
};

enum class Inequality { sobolev, poincare };

std::string to_string(Inequality which);

/// ||grad v||_{L^p} / ||v||_{L^{p*}}, p* = pN/(N-p). DomainError if v vanishes.
double sobolev_quotient(const QuotientProbe& probe, std::span<const double> v, const RadialGrid& grid);
/// ||grad v||_{L^p} / ||v||_{L^p}.
double poincare_quotient(const QuotientProbe& probe, std::span<const double> v, const RadialGrid& grid);

/// ||grad v||_{L^p} from face differences (ghost zero beyond r = R).
double gradient_norm(const RadialGrid& grid, std::span<const double> v, double p);

/// Grid over the support of one family member, sized per the probe settings.
RadialGrid member_grid(const QuotientProbe& probe, const TrialParams& params);
Field sample_member(const QuotientProbe& probe, const TrialParams& params, const RadialGrid& grid);
/// Quotient of one family member on its own grid.
double member_quotient(const QuotientProbe& probe, Inequality which, const TrialParams& params);

struct SearchOptions {
  std::size_t grid_points = 12;
  int golden_sweeps = 3;
  int golden_iterations = 30;
  /// Extra uniformly drawn starting candidates (deterministic in the seed).
  std::size_t random_starts = 0;
  std::uint64_t seed = 1;
};

struct BestConstantEstimate {
  double infimum = std::numeric_limits<double>::infinity();
  TrialParams params{};
  std::size_t evaluations = 0;
};

/// Grid search over the family box followed by golden-section refinement
/// per coordinate. `warm_start` is admitted as an extra candidate when it
/// lies inside the box. ConfigError if every member vanishes on its grid.
BestConstantEstimate estimate_best_constant(const QuotientProbe& probe, Inequality which,
                                            const SearchOptions& options = {},
                                            std::optional<TrialParams> warm_start = std::nullopt);

struct RefinementStep {
  double range_max = 0.0;
  double infimum = 0.0;
  TrialParams params{};
};

struct DilationSweep {
  std::vector<RefinementStep> history;
  /// Every doubling lowered the infimum strictly.
  bool strictly_decreasing = true;
  /// |inf_last - inf_prev| / inf_last.
  double last_relative_change = 0.0;
};

/// Repeats estimate_best_constant while doubling the upper end of the
/// dilation range, warm-starting each level from the previous minimiser.
DilationSweep sweep_dilation(QuotientProbe probe, Inequality which, int doublings, const SearchOptions& options = {});

}  // namespace leibenson
