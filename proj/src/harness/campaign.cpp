#include "leibenson/harness/campaign.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "leibenson/errors.hpp"
#include "leibenson/harness/datum.hpp"
#include "leibenson/harness/worker_pool.hpp"
#include "leibenson/monitors.hpp"
#include "leibenson/operators.hpp"
#include "leibenson/oracles.hpp"

namespace leibenson::harness {

using nlohmann::json;

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::blowup:
      return "blowup";
    case Verdict::global:
      return "global";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

Verdict classify(const SolveRun& run) {
  if (run.blew_up()) {
    return Verdict::blowup;
  }
  if (run.termination.kind == Termination::completed &&
      sup_norm(run.final_state) < 0.5 * sup_norm(run.initial_state)) {
    return Verdict::global;
  }
  return Verdict::undecided;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  constexpr char digits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(digits[digest[i] >> 4]);
    hex.push_back(digits[digest[i] & 0xf]);
  }
  return hex;
}

namespace {

/// JSON has no infinities; they are written as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string format(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::filesystem::path& relative, const std::string& content) {
    const auto path = dir_ / relative;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
      throw Error("cannot write '" + path.string() + "'");
    }
    entries_.push_back({relative.generic_string(), sha256_hex(content), content.size()});
  }

  void write_json(const std::filesystem::path& relative, const json& value) { write(relative, value.dump(2) + "\n"); }

  json listing() const {
    json files = json::array();
    for (const auto& e : entries_) {
      files.push_back({{"path", e.path}, {"sha256", e.hash}, {"bytes", e.bytes}});
    }
    return files;
  }

  std::vector<std::filesystem::path> paths() const {
    std::vector<std::filesystem::path> out;
    for (const auto& e : entries_) {
      out.emplace_back(e.path);
    }
    return out;
  }

 private:
  struct Entry {
    std::string path;
    std::string hash;
    std::size_t bytes;
  };
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

json assertions_json(const std::vector<Assertion>& assertions) {
  json out = json::array();
  for (const auto& a : assertions) {
    out.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  }
  return out;
}

json params_json(const EvolutionParams& params) {
  return {{"m", params.m},
          {"p", params.p},
          {"q", params.q},
          {"k", number(params.k)},
          {"epsilon", params.epsilon},
          {"reaction_on", params.reaction_on},
          {"t_end", params.t_end},
          {"cfl_safety", params.cfl_safety},
          {"blowup_threshold", params.blowup_threshold},
          {"dt_max", params.effective_dt_max()}};
}

std::string history_csv(const NormHistory& history) {
  std::ostringstream out;
  history.write_csv(out);
  return out.str();
}

void write_snapshots(OutputSet& out, const SolveRun& run) {
  const auto r = run.grid.centers();
  for (std::size_t j = 0; j < run.snapshots.size(); ++j) {
    const auto& snap = run.snapshots[j];
    char stem[48];
    std::snprintf(stem, sizeof stem, "snapshots/snapshot_%04zu", j);
    std::string text = "# t = " + format(snap.t) + "\n# r u\n";
    for (std::size_t i = 0; i < snap.u.size(); ++i) {
      text += format(r[i]) + " " + format(snap.u[i]) + "\n";
    }
    out.write(std::string(stem) + ".txt", text);
    out.write_json(std::string(stem) + ".json",
                   {{"t", snap.t}, {"r", std::vector<double>(r.begin(), r.end())}, {"u", snap.u}});
  }
}

json run_json(const SolveRun& run) {
  const double final_mass = power_integral(run.grid, run.final_state, 1.0);
  json out = {{"termination", to_string(run.termination.kind)},
              {"termination_time", run.termination.time},
              {"termination_sup", number(run.termination.sup_norm)},
              {"final_time", run.final_time},
              {"sup_initial", sup_norm(run.initial_state)},
              {"sup_final", sup_norm(run.final_state)},
              {"params", params_json(run.params)},
              {"grid", {{"R", run.grid.outer_radius()}, {"n_cells", run.grid.size()}, {"dr", run.grid.spacing()}}},
              {"diagnostics",
               {{"accepted_steps", run.diagnostics.accepted_steps},
                {"halvings", run.diagnostics.halvings},
                {"initial_mass", run.diagnostics.initial_mass},
                {"final_mass", final_mass},
                {"clipped_mass", run.diagnostics.clipped_mass},
                {"boundary_outflux", run.diagnostics.boundary_outflux},
                {"reaction_mass", run.diagnostics.reaction_mass},
                {"mass_defect", run.diagnostics.mass_defect(final_mass)}}}};
  if (run.params.reaction_on && !run.history.times().empty()) {
    const auto& exps = run.params.norm_exponents;
    const double s = exps.empty() ? 1.0 : exps.front();
    if (s == 1.0 || run.history.has(s)) {
      const ExitTimes times = exit_times(run.history, run.params.q, s);
      out["exit_times"] = {{"s", s}, {"T", number(times.T)}, {"T_F", number(times.T_F)}, {"T_M", number(times.T_M)}};
    }
  }
  return out;
}

SolveRun run_single(const ExperimentConfig& config) {
  const ModelManifold manifold = config.manifold.build();
  const RadialGrid grid(manifold, config.R, config.n_cells);
  const RadialProfile profile =
      datum_profile(config.datum, config.params.m, config.params.p, manifold.dimension());
  return solve(sample_datum(profile, grid), config.params, grid);
}

void solve_assertions(const ExperimentConfig& config, const SolveRun& run, std::vector<Assertion>& out) {
  if (config.expect.termination) {
    const bool pass = run.termination.kind == *config.expect.termination;
    out.push_back({"termination", pass,
                   "expected " + to_string(*config.expect.termination) + ", got " +
                       to_string(run.termination.kind)});
  }
  if (config.expect.max_clipped_fraction) {
    const double initial = run.diagnostics.initial_mass;
    const double fraction = initial > 0.0 ? run.diagnostics.clipped_mass / initial : 0.0;
    out.push_back({"clipped_mass", fraction <= *config.expect.max_clipped_fraction,
                   "clipped/initial mass = " + format(fraction)});
  }
}

void campaign_solve(const ExperimentConfig& config, OutputSet& out, std::vector<Assertion>& assertions, json& report) {
  const SolveRun run = run_single(config);
  out.write("history.csv", history_csv(run.history));
  write_snapshots(out, run);
  solve_assertions(config, run, assertions);
  report["run"] = run_json(run);
}

void campaign_decay_fit(const ExperimentConfig& config, OutputSet& out, std::vector<Assertion>& assertions,
                        json& report) {
  ExperimentConfig cfg = config;
  const auto& spec = config.decay_fit;
  if (std::isfinite(spec.s) && spec.s != 1.0 &&
      std::find(cfg.params.norm_exponents.begin(), cfg.params.norm_exponents.end(), spec.s) ==
          cfg.params.norm_exponents.end()) {
    cfg.params.norm_exponents.push_back(spec.s);
  }
  for (double s : spec.monotone_exponents) {
    if (std::isfinite(s) && s != 1.0 &&
        std::find(cfg.params.norm_exponents.begin(), cfg.params.norm_exponents.end(), s) ==
            cfg.params.norm_exponents.end()) {
      cfg.params.norm_exponents.push_back(s);
    }
  }
  const SolveRun run = run_single(cfg);
  out.write("history.csv", history_csv(run.history));
  write_snapshots(out, run);
  solve_assertions(cfg, run, assertions);
  report["run"] = run_json(run);

  const int N = cfg.manifold.dimension;
  const double mp1 = cfg.params.m * (cfg.params.p - 1.0);
  const double alpha = N / (N * (mp1 - 1.0) + cfg.params.p);
  const double expected = spec.expected_slope.value_or(std::isfinite(spec.s) ? -alpha * (1.0 - 1.0 / spec.s) : -alpha);
  const double t_end = spec.t_end.value_or(cfg.params.t_end);
  const double t_begin = spec.t_begin.value_or(t_end / 10.0);
  json fit_json = {{"s", number(spec.s)}, {"expected_slope", expected}, {"tolerance", spec.tolerance}};
  if (run.termination.kind != Termination::completed) {
    assertions.push_back({"decay_slope", false, "run did not complete: " + to_string(run.termination.kind)});
  } else {
    try {
      const DecayFit fit = fit_decay(run.history, spec.s, t_begin, t_end);
      fit_json["slope"] = fit.exponent;
      fit_json["intercept"] = fit.intercept;
      fit_json["residual"] = fit.residual;
      fit_json["samples"] = fit.samples;
      fit_json["t_begin"] = fit.t_begin;
      fit_json["t_end"] = fit.t_end;
      const bool pass = std::abs(fit.exponent - expected) <= spec.tolerance;
      assertions.push_back({"decay_slope", pass, "slope " + format(fit.exponent) + " vs " + format(expected)});
    } catch (const FitError& e) {
      assertions.push_back({"decay_slope", false, e.what()});
    }
  }
  report["fit"] = fit_json;
  json mono = json::array();
  for (double s : spec.monotone_exponents) {
    const MonotonicityReport m = check_ls_monotone(run.history, s, spec.monotone_tolerance);
    mono.push_back({{"s", number(s)}, {"pass", m.pass}, {"worst_ratio", m.worst_ratio}, {"worst_time", m.worst_time}});
    assertions.push_back({"ls_monotone(" + format(s) + ")", m.pass, "worst ratio " + format(m.worst_ratio)});
  }
  report["ls_monotone"] = mono;
}

json point_json(const ScanPoint& p) {
  return {{"value", p.value},     {"horizon", p.horizon}, {"termination", to_string(p.termination)},
          {"final_time", p.final_time}, {"sup0", p.sup0}, {"sup_end", p.sup_end},
          {"steps", p.steps},     {"verdict", to_string(p.verdict)}};
}

std::string scan_csv(const std::string& axis, const std::vector<ScanPoint>& points) {
  std::string text = axis + ",horizon,termination,final_time,sup0,sup_end,steps,verdict\n";
  for (const auto& p : points) {
    text += format(p.value) + "," + format(p.horizon) + "," + to_string(p.termination) + "," + format(p.final_time) +
            "," + format(p.sup0) + "," + format(p.sup_end) + "," + std::to_string(p.steps) + "," +
            to_string(p.verdict) + "\n";
  }
  return text;
}

void campaign_scan(const ExperimentConfig& config, OutputSet& out, std::vector<Assertion>& assertions, json& report) {
  const auto& scan = config.scan;
  const std::vector<ScanPoint> points = run_scan(config);
  out.write("scan.csv", scan_csv(scan.axis, points));
  json table = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    table.push_back(point_json(points[i]));
    if (!scan.expected.empty() && scan.expected[i] != "any") {
      const bool pass = to_string(points[i].verdict) == scan.expected[i];
      assertions.push_back({"verdict(" + format(points[i].value) + ")", pass,
                            "expected " + scan.expected[i] + ", got " + to_string(points[i].verdict)});
    }
  }
  report["scan"] = table;
  if (scan.axis == "amplitude" && !points.empty()) {
    // No global verdict above a blow-up verdict.
    std::vector<ScanPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    double lowest_blowup = kInfinity;
    for (const auto& p : sorted) {
      if (p.verdict == Verdict::blowup) {
        lowest_blowup = std::min(lowest_blowup, p.value);
      }
    }
    bool pass = true;
    for (const auto& p : sorted) {
      if (p.verdict == Verdict::global && p.value > lowest_blowup) {
        pass = false;
      }
    }
    assertions.push_back({"amplitude_monotone", pass, "lowest blow-up amplitude " + format(lowest_blowup)});
  }
  if (scan.bracket) {
    try {
      const BisectionResult b = bisect_threshold(config, *scan.bracket);
      json probes = json::array();
      for (const auto& p : b.probes) {
        probes.push_back(point_json(p));
      }
      json bis = {{"boundary", b.boundary},       {"half_width", b.half_width},
                  {"blowup_side", b.blowup_side}, {"global_side", b.global_side},
                  {"probes", probes}};
      if (b.undecided_band) {
        bis["undecided_band"] = {(*b.undecided_band)[0], (*b.undecided_band)[1]};
      } else {
        bis["undecided_band"] = nullptr;
      }
      report["bisection"] = bis;
      out.write("bisection.csv", scan_csv(scan.axis, b.probes));
      if (scan.expect_boundary) {
        const auto [lo, hi] = *scan.expect_boundary;
        const bool pass = b.boundary >= lo && b.boundary <= hi;
        assertions.push_back({"boundary", pass,
                              "boundary " + format(b.boundary) + " +- " + format(b.half_width) + " expected in [" +
                                  format(lo) + ", " + format(hi) + "]"});
      }
    } catch (const BracketError& e) {
      report["bisection"] = {{"error", e.what()}};
      assertions.push_back({"bisection_bracket", false, e.what()});
    }
  }
}

void campaign_ladder(const ExperimentConfig& config, OutputSet& out, std::vector<Assertion>& assertions,
                     json& report) {
  const auto& spec = config.ladder;
  LadderConfig lc;
  lc.manifold = config.manifold.build();
  lc.dr = spec.dr;
  lc.params = config.params;
  lc.datum = datum_profile(config.datum, config.params.m, config.params.p, lc.manifold.dimension());
  lc.levels = spec.levels;
  lc.probe_times = spec.probe_times;
  lc.tolerance = spec.tolerance;
  const LadderReport ladder = ladder_run(lc);

  std::string csv = "level,k,R,h,n_cells,t,sup,L1,sup_diff_next,L1_diff_next\n";
  json levels = json::array();
  for (std::size_t j = 0; j < ladder.levels.size(); ++j) {
    const auto& lv = ladder.levels[j];
    json probes = json::array();
    for (std::size_t s = 0; s < lv.probes.size(); ++s) {
      const auto& pr = lv.probes[s];
      std::string sup_diff;
      std::string l1_diff;
      for (const auto& g : ladder.gaps) {
        if (g.level == j && g.t == pr.t) {
          sup_diff = format(g.sup_diff);
          l1_diff = format(g.l1_diff);
        }
      }
      csv += std::to_string(j) + "," + format(lv.level.k) + "," + format(lv.level.R) + "," + format(lv.level.h) +
             "," + std::to_string(lv.n_cells) + "," + format(pr.t) + "," + format(pr.sup) + "," + format(pr.l1) +
             "," + sup_diff + "," + l1_diff + "\n";
      probes.push_back({{"t", pr.t}, {"sup", pr.sup}, {"L1", pr.l1}});
    }
    levels.push_back({{"k", number(lv.level.k)},
                      {"R", lv.level.R},
                      {"h", number(lv.level.h)},
                      {"n_cells", lv.n_cells},
                      {"termination", to_string(lv.termination)},
                      {"probes", probes}});
  }
  out.write("ladder.csv", csv);
  json gaps = json::array();
  for (const auto& g : ladder.gaps) {
    gaps.push_back(
        {{"level", g.level}, {"t", g.t}, {"sup_diff", g.sup_diff}, {"L1_diff", g.l1_diff}, {"overshoot", g.overshoot}});
  }
  report["ladder"] = {{"levels", levels},
                      {"gaps", gaps},
                      {"converged_at", ladder.converged_at ? json(*ladder.converged_at) : json(nullptr)},
                      {"pointwise_monotone", ladder.pointwise_monotone},
                      {"norms_monotone", ladder.norms_monotone},
                      {"complete", ladder.complete}};
  assertions.push_back({"ladder_complete", ladder.complete, "every level reached every probe time"});
  if (spec.require_convergence) {
    assertions.push_back({"ladder_converged", ladder.converged_at.has_value(),
                          ladder.converged_at ? "converged from level " + std::to_string(*ladder.converged_at)
                                              : "consecutive gaps never fell below tolerance"});
  }
  if (spec.require_monotone) {
    assertions.push_back({"ladder_monotone", ladder.pointwise_monotone && ladder.norms_monotone,
                          "pointwise " + std::string(ladder.pointwise_monotone ? "yes" : "no") + ", norms " +
                              (ladder.norms_monotone ? "yes" : "no")});
  }
}

void campaign_inequality(const ExperimentConfig& config, OutputSet& out, std::vector<Assertion>& assertions,
                         json& report) {
  const auto& spec = config.inequality;
  QuotientProbe probe;
  probe.manifold = config.manifold.build();
  probe.p = spec.p;
  probe.family = spec.build_family();
  probe.n_cells = spec.n_cells;
  probe.max_spacing = spec.max_spacing;
  probe.max_cells = spec.max_cells;
  const DilationSweep sweep = sweep_dilation(probe, spec.which, spec.doublings, spec.search);
  const auto& last = sweep.history.back();
  json history = json::array();
  for (const auto& step : sweep.history) {
    history.push_back({{"range_max", step.range_max}, {"infimum", step.infimum}, {"params", step.params}});
  }
  json doc = {{"manifold", probe.manifold.name()},
              {"dimension", probe.manifold.dimension()},
              {"p", spec.p},
              {"which", to_string(spec.which)},
              {"family", probe.family.name()},
              {"infimum", last.infimum},
              {"params", last.params},
              {"refinement_history", history},
              {"strictly_decreasing", sweep.strictly_decreasing},
              {"last_relative_change", sweep.last_relative_change}};
  out.write_json("inequality.json", doc);
  report["inequality"] = doc;
  if (spec.expect_positive) {
    if (*spec.expect_positive) {
      const bool pass = last.infimum > 0.0 && sweep.last_relative_change < spec.stabilization;
      assertions.push_back({"positive_infimum", pass,
                            "infimum " + format(last.infimum) + ", last relative change " +
                                format(sweep.last_relative_change)});
    } else {
      assertions.push_back({"infimum_collapses", sweep.strictly_decreasing,
                            sweep.strictly_decreasing ? "decreases at every doubling"
                                                      : "a doubling failed to lower the infimum"});
    }
  }
  if (spec.expect_below) {
    assertions.push_back({"infimum_below", last.infimum < *spec.expect_below,
                          "infimum " + format(last.infimum) + " vs " + format(*spec.expect_below)});
  }
}

}  // namespace

ScanPoint run_scan_point(const ExperimentConfig& config, double value) {
  EvolutionParams params = config.params;
  params.k = kInfinity;
  params.snapshot_times.clear();
  params.norm_exponents.clear();
  DatumSpec datum = config.datum;
  if (config.scan.axis == "amplitude") {
    datum.first = value;
  } else {
    params.q = value;
  }
  const ModelManifold manifold = config.manifold.build();
  const RadialGrid grid(manifold, config.R, config.n_cells);
  const Field u0 = sample_datum(datum_profile(datum, params.m, params.p, manifold.dimension()), grid);
  ScanPoint point;
  point.value = value;
  point.sup0 = sup_norm(u0);
  if (!(point.sup0 > 0.0)) {
    throw ConfigError("scan datum vanishes on the grid");
  }
  point.horizon = config.scan.horizon.value_or(config.scan.horizon_factor *
                                               OdeReference(params.q, point.sup0, kInfinity).blowup_time());
  params.t_end = point.horizon;
  const SolveRun run = solve(u0, params, grid);
  point.termination = run.termination.kind;
  point.final_time = run.final_time;
  point.sup_end = sup_norm(run.final_state);
  point.steps = run.diagnostics.accepted_steps;
  point.verdict = classify(run);
  return point;
}

std::vector<ScanPoint> run_scan(const ExperimentConfig& config) {
  std::vector<ScanPoint> points(config.scan.values.size());
  parallel_for(points.size(), config.workers,
               [&](std::size_t i) { points[i] = run_scan_point(config, config.scan.values[i]); });
  return points;
}

BisectionResult bisect_threshold(const ExperimentConfig& config, std::array<double, 2> bracket) {
  BisectionResult result;
  std::array<ScanPoint, 2> ends;
  parallel_for(2, config.workers, [&](std::size_t i) { ends[i] = run_scan_point(config, bracket[i]); });
  result.probes = {ends[0], ends[1]};
  const bool opposite = (ends[0].verdict == Verdict::blowup && ends[1].verdict == Verdict::global) ||
                        (ends[0].verdict == Verdict::global && ends[1].verdict == Verdict::blowup);
  if (!opposite) {
    throw BracketError("bracket [" + format(bracket[0]) + ", " + format(bracket[1]) + "] gives verdicts " +
                       to_string(ends[0].verdict) + " and " + to_string(ends[1].verdict));
  }
  double blow = ends[0].verdict == Verdict::blowup ? bracket[0] : bracket[1];
  double glob = ends[0].verdict == Verdict::blowup ? bracket[1] : bracket[0];
  // Undecided probes, ordered by distance from the blow-up side.
  std::vector<double> undecided;
  auto distance = [&](double x) { return std::abs(x - blow); };
  for (int step = 0; step < config.scan.bisection_steps; ++step) {
    double mid = 0.5 * (blow + glob);
    if (!undecided.empty()) {
      auto [near, far] = std::minmax_element(undecided.begin(), undecided.end(),
                                             [&](double a, double b) { return distance(a) < distance(b); });
      mid = step % 2 == 0 ? 0.5 * (blow + *near) : 0.5 * (*far + glob);
    }
    const ScanPoint p = run_scan_point(config, mid);
    result.probes.push_back(p);
    if (p.verdict == Verdict::blowup) {
      blow = mid;
    } else if (p.verdict == Verdict::global) {
      glob = mid;
    } else {
      undecided.push_back(mid);
    }
    // Undecided probes no longer strictly between the two sides are superseded.
    std::erase_if(undecided, [&](double x) { return !(std::min(blow, glob) < x && x < std::max(blow, glob)); });
  }
  result.blowup_side = blow;
  result.global_side = glob;
  result.boundary = 0.5 * (blow + glob);
  result.half_width = 0.5 * std::abs(glob - blow);
  if (!undecided.empty()) {
    const auto [lo, hi] = std::minmax_element(undecided.begin(), undecided.end());
    result.undecided_band = std::array<double, 2>{*lo, *hi};
  }
  return result;
}

CampaignResult run_campaign(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  OutputSet out(out_dir);
  CampaignResult result;
  json report = {{"campaign", to_string(config.campaign)}};
  switch (config.campaign) {
    case Campaign::solve:
      campaign_solve(config, out, result.assertions, report);
      break;
    case Campaign::decay_fit:
      campaign_decay_fit(config, out, result.assertions, report);
      break;
    case Campaign::fujita_scan:
      campaign_scan(config, out, result.assertions, report);
      break;
    case Campaign::ladder:
      campaign_ladder(config, out, result.assertions, report);
      break;
    case Campaign::verify_inequality:
      campaign_inequality(config, out, result.assertions, report);
      break;
  }
  const bool pass = std::all_of(result.assertions.begin(), result.assertions.end(), [](const auto& a) { return a.pass; });
  result.exit_code = pass ? 0 : 1;
  report["assertions"] = assertions_json(result.assertions);
  report["pass"] = pass;
  out.write_json("report.json", report);

  json manifest = {{"campaign", to_string(config.campaign)},
                   {"config", config.effective_text},
                   {"seed", config.seed},
                   {"exit_code", result.exit_code},
                   {"files", out.listing()}};
  const std::string text = manifest.dump(2) + "\n";
  std::ofstream(out_dir / "manifest.json", std::ios::binary) << text;
  result.files = out.paths();
  result.files.emplace_back("manifest.json");
  return result;
}

}  // namespace leibenson::harness
