#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "leibenson/harness/config.hpp"

namespace leibenson::harness {

struct Assertion {
  std::string name;
  bool pass = true;
  std::string detail;
};

enum class Verdict { blowup, global, undecided };

std::string to_string(Verdict verdict);

/// blowup if the run blew up, global if it completed with the sup-norm at
/// least halved, undecided otherwise.
Verdict classify(const SolveRun& run);

struct ScanPoint {
  double value = 0.0;
  double horizon = 0.0;
  Termination termination = Termination::completed;
  double final_time = 0.0;
  double sup0 = 0.0;
  double sup_end = 0.0;
  std::size_t steps = 0;
  Verdict verdict = Verdict::undecided;
};

/// One scan solve with the axis value substituted, k = infinity and the
/// horizon taken from the scan settings.
ScanPoint run_scan_point(const ExperimentConfig& config, double value);

/// All scan values, spread over `config.workers` threads, in config order.
std::vector<ScanPoint> run_scan(const ExperimentConfig& config);

struct BisectionResult {
  /// Verdict-change point and half the final bracket (or band) width.
  double boundary = 0.0;
  double half_width = 0.0;
  /// Closest blow-up and global verdicts found.
  double blowup_side = 0.0;
  double global_side = 0.0;
  /// Range of undecided probes between the two sides, if any.
  std::optional<std::array<double, 2>> undecided_band;
  std::vector<ScanPoint> probes;
};

/// Bisects the scan axis inside `bracket`, whose endpoints must give one
/// blow-up and one global verdict (BracketError otherwise). Undecided
/// midpoints are kept as a band; later probes refine both band edges.
BisectionResult bisect_threshold(const ExperimentConfig& config, std::array<double, 2> bracket);

struct CampaignResult {
  int exit_code = 0;
  std::vector<Assertion> assertions;
  /// Output files relative to the output directory, manifest last.
  std::vector<std::filesystem::path> files;
};

/// Runs the configured campaign, writes its outputs and a manifest with
/// SHA-256 hashes into `out_dir`. Exit code 0 when every assertion passed, 1 otherwise.
CampaignResult run_campaign(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace leibenson::harness
