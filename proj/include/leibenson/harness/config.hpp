#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leibenson/evolution.hpp"
#include "leibenson/geometry.hpp"
#include "leibenson/inequalities.hpp"
#include "leibenson/ladder.hpp"

namespace leibenson::harness {

enum class Campaign { solve, decay_fit, fujita_scan, ladder, verify_inequality };

std::string to_string(Campaign campaign);
/// Accepts both "decay-fit" and "decay_fit" spellings.
std::optional<Campaign> parse_campaign(std::string_view name);

/// Initial datum: `zero()`, `barenblatt(mass, t0)`, `bump(amplitude, radius)` or `file(path)`.
struct DatumSpec {
  enum class Kind { zero, barenblatt, bump, file };
  Kind kind = Kind::zero;
  double first = 0.0;   // mass or amplitude
  double second = 0.0;  // t0 or radius
  std::filesystem::path path;
  std::string text = "zero()";
};

/// Throws ConfigError on malformed specs. Relative file paths resolve against `base`.
DatumSpec parse_datum(std::string_view text, const std::filesystem::path& base = {});

struct ManifoldSpec {
  std::string kind = "euclidean";
  int dimension = 3;
  double curvature = 1.0;
  std::filesystem::path warping_file;

  ModelManifold build() const;
};

struct SolveExpect {
  std::optional<Termination> termination;
  std::optional<double> max_clipped_fraction;
};

struct DecayFitSpec {
  /// Norm to fit; infinity selects the sup-norm.
  double s = kInfinity;
  /// Fit window, defaulting to the last decade [t_end / 10, t_end].
  std::optional<double> t_begin;
  std::optional<double> t_end;
  /// Defaults to the self-similar rate -alpha (1 - 1/s).
  std::optional<double> expected_slope;
  double tolerance = 0.05;
  /// Exponents whose L^s norms must not exceed their initial value.
  std::vector<double> monotone_exponents;
  double monotone_tolerance = 1e-3;
};

struct ScanSpec {
  /// "q" or "amplitude" (the bump amplitude).
  std::string axis = "q";
  std::vector<double> values;
  /// Absolute horizon; when absent the horizon is horizon_factor times the
  /// ODE blow-up time of the datum.
  std::optional<double> horizon;
  double horizon_factor = 100.0;
  std::optional<std::array<double, 2>> bracket;
  int bisection_steps = 12;
  /// Expected verdict per value: "blowup", "global", "undecided" or "any".
  std::vector<std::string> expected;
  std::optional<std::array<double, 2>> expect_boundary;
};

struct LadderSpec {
  double dr = 1.0 / 64.0;
  std::vector<LadderLevel> levels;
  std::vector<double> probe_times;
  double tolerance = 1e-10;
  bool require_convergence = true;
  bool require_monotone = true;
};

struct InequalitySpec {
  Inequality which = Inequality::poincare;
  double p = 2.0;
  std::string family = "exp_taper";
  TrialParams lower{0.0, 1.0};
  TrialParams upper{2.0, 16.0};
  double support_ratio = 50.0;
  std::size_t n_cells = 4096;
  double max_spacing = kInfinity;
  std::size_t max_cells = std::size_t{1} << 16;
  int doublings = 4;
  SearchOptions search;
  /// Assertions: positive infimum stabilised within `stabilization`, or collapse below `expect_below`.
  std::optional<bool> expect_positive;
  double stabilization = 0.02;
  std::optional<double> expect_below;

  TrialFamily build_family() const;
};

struct ExperimentConfig {
  Campaign campaign = Campaign::solve;
  ManifoldSpec manifold;
  double R = 1.0;
  std::size_t n_cells = 256;
  EvolutionParams params;
  DatumSpec datum;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  SolveExpect expect;
  DecayFitSpec decay_fit;
  ScanSpec scan;
  LadderSpec ladder;
  InequalitySpec inequality;
  /// Normalised YAML echo of the effective configuration.
  std::string effective_text;
  std::filesystem::path base_dir;
};

/// Parses YAML text, applies dotted `key=value` overrides (values parsed as
/// YAML) and validates. Every problem is collected into one ConfigError.
ExperimentConfig parse_config(std::string_view yaml, Campaign campaign,
                              const std::vector<std::string>& overrides = {},
                              const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& file, Campaign campaign,
                             const std::vector<std::string>& overrides = {});

}  // namespace leibenson::harness
