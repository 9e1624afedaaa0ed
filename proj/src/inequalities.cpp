#include "leibenson/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "leibenson/errors.hpp"
#include "leibenson/operators.hpp"

namespace leibenson {

double quintic_taper(double x) {
  if (x <= 0.9) {
    return 1.0;
  }
  if (x >= 1.0) {
    return 0.0;
  }
  const double s = (x - 0.9) / 0.1;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

TrialFamily TrialFamily::exp_taper(double b_lo, double b_hi, double lambda_lo, double lambda_hi) {
  TrialFamily f;
  f.kind = TrialFamilyKind::exp_taper;
  f.lower = {b_lo, lambda_lo};
  f.upper = {b_hi, lambda_hi};
  f.log_scale = {false, true};
  f.dilation_index = 1;
  return f;
}

TrialFamily TrialFamily::power(double lambda_lo, double lambda_hi, double b_lo, double b_hi, double support_ratio) {
  TrialFamily f;
  f.kind = TrialFamilyKind::power;
  f.lower = {lambda_lo, b_lo};
  f.upper = {lambda_hi, b_hi};
  f.log_scale = {true, false};
  f.dilation_index = 0;
  f.support_ratio = support_ratio;
  return f;
}

TrialFamily TrialFamily::bump(double w_lo, double w_hi, double c_lo, double c_hi) {
  TrialFamily f;
  f.kind = TrialFamilyKind::bump;
  f.lower = {w_lo, c_lo};
  f.upper = {w_hi, c_hi};
  f.log_scale = {true, false};
  f.dilation_index = 0;
  return f;
}

double TrialFamily::value(const TrialParams& params, double r) const {
  switch (kind) {
    case TrialFamilyKind::exp_taper:
      return std::exp(-params[0] * r) * quintic_taper(r / params[1]);
    case TrialFamilyKind::power:
      return std::pow(1.0 + (r / params[0]) * (r / params[0]), -params[1]) *
             quintic_taper(r / (support_ratio * params[0]));
    case TrialFamilyKind::bump: {
      const double x = (r - params[1]) / params[0];
      const double a = 1.0 - x * x;
      return a > 0.0 ? a * a * a : 0.0;
    }
  }
  return 0.0;
}

double TrialFamily::support_radius(const TrialParams& params) const {
  switch (kind) {
    case TrialFamilyKind::exp_taper:
      return params[1];
    case TrialFamilyKind::power:
      return support_ratio * params[0];
    case TrialFamilyKind::bump:
      return params[1] + params[0];
  }
  return 0.0;
}

std::string TrialFamily::name() const {
  switch (kind) {
    case TrialFamilyKind::exp_taper:
      return "exp_taper";
    case TrialFamilyKind::power:
      return "power";
    case TrialFamilyKind::bump:
      return "bump";
  }
  return "unknown";
}

std::string to_string(Inequality which) { return which == Inequality::sobolev ? "sobolev" : "poincare"; }

double gradient_norm(const RadialGrid& grid, std::span<const double> v, double p) {
  const std::size_t n = grid.size();
  const double dr = grid.spacing();
  const auto areas = grid.face_areas();
  std::vector<double> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double next = j + 1 < n ? v[j + 1] : 0.0;
    terms[j] = abs_pow((next - v[j]) / dr, p) * areas[j] * dr;
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

namespace {

double quotient(const QuotientProbe& probe, std::span<const double> v, const RadialGrid& grid, double exponent) {
  if (!(probe.p > 1.0)) {
    throw ParameterError("quotient: p must exceed 1");
  }
  if (v.size() != grid.size()) {
    throw DomainError("quotient: field does not match grid");
  }
  const double denominator = lebesgue_norm(grid, v, exponent);
  if (!(denominator > 0.0)) {
    throw DomainError("quotient undefined for v = 0");
  }
  return gradient_norm(grid, v, probe.p) / denominator;
}

}  // namespace

double sobolev_quotient(const QuotientProbe& probe, std::span<const double> v, const RadialGrid& grid) {
  const double N = grid.manifold().dimension();
  if (!(probe.p < N)) {
    throw ParameterError("sobolev_quotient: need p < N");
  }
  return quotient(probe, v, grid, probe.p * N / (N - probe.p));
}

double poincare_quotient(const QuotientProbe& probe, std::span<const double> v, const RadialGrid& grid) {
  return quotient(probe, v, grid, probe.p);
}

RadialGrid member_grid(const QuotientProbe& probe, const TrialParams& params) {
  const double R = probe.family.support_radius(params);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw ConfigError("trial member has no positive support radius");
  }
  std::size_t n = probe.n_cells;
  if (std::isfinite(probe.max_spacing) && probe.max_spacing > 0.0) {
    n = std::max(n, static_cast<std::size_t>(std::ceil(R / probe.max_spacing)));
  }
  n = std::min(n, std::max(probe.max_cells, probe.n_cells));
  return RadialGrid(probe.manifold, R, n);
}

Field sample_member(const QuotientProbe& probe, const TrialParams& params, const RadialGrid& grid) {
  Field v(grid.size());
  const auto r = grid.centers();
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = probe.family.value(params, r[i]);
  }
  return v;
}

double member_quotient(const QuotientProbe& probe, Inequality which, const TrialParams& params) {
  const RadialGrid grid = member_grid(probe, params);
  const Field v = sample_member(probe, params, grid);
  return which == Inequality::sobolev ? sobolev_quotient(probe, v, grid) : poincare_quotient(probe, v, grid);
}

namespace {

class QuotientSearch {
 public:
  QuotientSearch(const QuotientProbe& probe, Inequality which) : probe_(probe), which_(which) {}

  double to_coord(std::size_t c, double value) const {
    return probe_.family.log_scale[c] ? std::log(value) : value;
  }
  double from_coord(std::size_t c, double x) const { return probe_.family.log_scale[c] ? std::exp(x) : x; }

  /// Quotient at params; +infinity for members that vanish on their grid.
  double evaluate(const TrialParams& params) {
    ++evaluations_;
    const double R = probe_.family.support_radius(params);
    std::size_t n = probe_.n_cells;
    if (std::isfinite(probe_.max_spacing) && probe_.max_spacing > 0.0) {
      n = std::max(n, static_cast<std::size_t>(std::ceil(R / probe_.max_spacing)));
    }
    n = std::min(n, std::max(probe_.max_cells, probe_.n_cells));
    auto key = std::make_pair(R, n);
    auto it = grids_.find(key);
    if (it == grids_.end()) {
      if (grids_.size() > 64) {
        grids_.clear();
      }
      it = grids_.emplace(key, RadialGrid(probe_.manifold, R, n)).first;
    }
    const RadialGrid& grid = it->second;
    const Field v = sample_member(probe_, params, grid);
    try {
      const double value =
          which_ == Inequality::sobolev ? sobolev_quotient(probe_, v, grid) : poincare_quotient(probe_, v, grid);
      any_finite_ = any_finite_ || std::isfinite(value);
      return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  void offer(const TrialParams& params) {
    const double value = evaluate(params);
    if (value < best_.infimum) {
      best_.infimum = value;
      best_.params = params;
    }
  }

  BestConstantEstimate& best() { return best_; }
  std::size_t evaluations() const { return evaluations_; }
  bool any_finite() const { return any_finite_; }

 private:
  const QuotientProbe& probe_;
  Inequality which_;
  std::map<std::pair<double, std::size_t>, RadialGrid> grids_;
  BestConstantEstimate best_;
  std::size_t evaluations_ = 0;
  bool any_finite_ = false;
};

}  // namespace

BestConstantEstimate estimate_best_constant(const QuotientProbe& probe, Inequality which,
                                            const SearchOptions& options, std::optional<TrialParams> warm_start) {
  const auto& family = probe.family;
  for (std::size_t c = 0; c < 2; ++c) {
    if (!(family.upper[c] >= family.lower[c]) || (family.log_scale[c] && !(family.lower[c] > 0.0))) {
      throw ConfigError("trial family parameter box is invalid");
    }
  }
  if (options.grid_points < 2) {
    throw ConfigError("grid search needs at least 2 points per coordinate");
  }

  QuotientSearch search(probe, which);
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  std::array<double, 2> h{};
  for (std::size_t c = 0; c < 2; ++c) {
    lo[c] = search.to_coord(c, family.lower[c]);
    hi[c] = search.to_coord(c, family.upper[c]);
    h[c] = (hi[c] - lo[c]) / static_cast<double>(options.grid_points - 1);
  }

  // Lexicographic grid order; ties keep the first candidate.
  for (std::size_t i = 0; i < options.grid_points; ++i) {
    for (std::size_t j = 0; j < options.grid_points; ++j) {
      const double x0 = i + 1 == options.grid_points ? hi[0] : lo[0] + static_cast<double>(i) * h[0];
      const double x1 = j + 1 == options.grid_points ? hi[1] : lo[1] + static_cast<double>(j) * h[1];
      search.offer({search.from_coord(0, x0), search.from_coord(1, x1)});
    }
  }
  if (options.random_starts > 0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < options.random_starts; ++k) {
      const double x0 = lo[0] + unit(rng) * (hi[0] - lo[0]);
      const double x1 = lo[1] + unit(rng) * (hi[1] - lo[1]);
      search.offer({search.from_coord(0, x0), search.from_coord(1, x1)});
    }
  }
  if (warm_start) {
    const auto& w = *warm_start;
    if (w[0] >= family.lower[0] && w[0] <= family.upper[0] && w[1] >= family.lower[1] && w[1] <= family.upper[1]) {
      search.offer(w);
    }
  }
  if (!search.any_finite()) {
    throw ConfigError("trial family is degenerate: every member vanishes on its grid");
  }

  constexpr double golden = 0.6180339887498949;
  for (int sweep = 0; sweep < options.golden_sweeps; ++sweep) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (!(h[c] > 0.0)) {
        continue;
      }
      const TrialParams centre = search.best().params;
      const double xc = search.to_coord(c, centre[c]);
      double a = std::max(lo[c], xc - h[c]);
      double b = std::min(hi[c], xc + h[c]);
      auto at = [&](double x) {
        TrialParams trial = centre;
        trial[c] = search.from_coord(c, x);
        return trial;
      };
      double x1 = b - golden * (b - a);
      double x2 = a + golden * (b - a);
      double f1 = search.evaluate(at(x1));
      double f2 = search.evaluate(at(x2));
      for (int it = 0; it < options.golden_iterations; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = search.evaluate(at(x1));
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = search.evaluate(at(x2));
        }
      }
      search.offer(at(f1 < f2 ? x1 : x2));
    }
  }
  BestConstantEstimate out = search.best();
  out.evaluations = search.evaluations();
  return out;
}

DilationSweep sweep_dilation(QuotientProbe probe, Inequality which, int doublings, const SearchOptions& options) {
  if (doublings < 1) {
    throw ConfigError("dilation sweep needs at least one doubling");
  }
  DilationSweep sweep;
  const std::size_t d = probe.family.dilation_index;
  std::optional<TrialParams> warm;
  for (int level = 0; level <= doublings; ++level) {
    if (level > 0) {
      probe.family.upper[d] *= 2.0;
    }
    const auto estimate = estimate_best_constant(probe, which, options, warm);
    warm = estimate.params;
    if (!sweep.history.empty() && !(estimate.infimum < sweep.history.back().infimum)) {
      sweep.strictly_decreasing = false;
    }
    sweep.history.push_back(RefinementStep{probe.family.upper[d], estimate.infimum, estimate.params});
  }
  const double last = sweep.history.back().infimum;
  const double prev = sweep.history[sweep.history.size() - 2].infimum;
  sweep.last_relative_change = std::abs(last - prev) / last;
  return sweep;
}

}  // namespace leibenson
