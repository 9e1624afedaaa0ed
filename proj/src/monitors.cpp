#include "leibenson/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leibenson/operators.hpp"

namespace leibenson {

namespace {

std::vector<double> running_max(std::vector<double> values) {
  for (std::size_t j = 1; j < values.size(); ++j) {
    values[j] = std::max(values[j], values[j - 1]);
  }
  return values;
}

double first_crossing(std::span<const double> times, const std::vector<double>& series, double level) {
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (series[j] > level) {
      if (j == 0) {
        return times[0];
      }
      const double a = series[j - 1];
      const double b = series[j];
      const double theta = (level - a) / (b - a);
      return times[j - 1] + theta * (times[j] - times[j - 1]);
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> s_monitor(const NormHistory& history, double q) {
  if (!(q > 1.0)) {
    throw ParameterError("s_monitor: q must exceed 1");
  }
  const auto times = history.times();
  const auto sup = history.sup();
  std::vector<double> values(history.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = times[j] * std::pow(sup[j], q - 1.0);
  }
  return running_max(std::move(values));
}

std::vector<double> f_monitor(const NormHistory& history, double s) {
  const auto norms = history.series(s);
  std::vector<double> values(norms.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = std::pow(norms[j], s);
  }
  return running_max(std::move(values));
}

std::vector<double> m_monitor(const NormHistory& history) {
  const auto l1 = history.l1();
  return running_max(std::vector<double>(l1.begin(), l1.end()));
}

ExitTimes exit_times(const NormHistory& history, double q, double s) {
  if (history.empty()) {
    throw ConfigError("exit_times: empty norm history");
  }
  if (!history.has(s)) {
    throw ConfigError("exit_times: no L^" + std::to_string(s) + " series recorded");
  }
  const auto times = history.times();
  const auto S = s_monitor(history, q);
  const auto F = f_monitor(history, s);
  const auto M = m_monitor(history);
  return ExitTimes{first_crossing(times, S, 1.0), first_crossing(times, F, 2.0 * F.front()),
                   first_crossing(times, M, 2.0 * M.front())};
}

DecayFit fit_decay(const NormHistory& history, double s, double t_begin, double t_end) {
  const auto times = history.times();
  const auto norms = history.series(s);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] < t_begin || times[j] > t_end) {
      continue;
    }
    if (!(times[j] > 0.0) || !(norms[j] > 0.0)) {
      throw FitError("fit_decay: non-positive norm or time in the fit window (blow-up or extinction?)");
    }
    x.push_back(std::log(times[j]));
    y.push_back(std::log(norms[j]));
  }
  if (x.size() < 10) {
    throw FitError("fit_decay: fewer than 10 samples in [" + std::to_string(t_begin) + ", " +
                   std::to_string(t_end) + "]");
  }
  const double n = static_cast<double>(x.size());
  const double mean_x = pairwise_sum(x) / n;
  const double mean_y = pairwise_sum(y) / n;
  std::vector<double> sxy(x.size());
  std::vector<double> sxx(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    sxy[j] = (x[j] - mean_x) * (y[j] - mean_y);
    sxx[j] = (x[j] - mean_x) * (x[j] - mean_x);
  }
  const double denom = pairwise_sum(sxx);
  if (!(denom > 0.0)) {
    throw FitError("fit_decay: degenerate time window");
  }
  DecayFit fit;
  fit.exponent = pairwise_sum(sxy) / denom;
  fit.intercept = mean_y - fit.exponent * mean_x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    fit.residual = std::max(fit.residual, std::abs(y[j] - (fit.intercept + fit.exponent * x[j])));
  }
  fit.samples = x.size();
  fit.t_begin = std::exp(x.front());
  fit.t_end = std::exp(x.back());
  return fit;
}

MonotonicityReport check_ls_monotone(const NormHistory& history, double s, double tol) {
  MonotonicityReport report;
  report.s = s;
  const auto norms = history.series(s);
  const auto times = history.times();
  if (norms.empty()) {
    return report;
  }
  report.initial_norm = norms.front();
  const double limit = norms.front() * (1.0 + tol);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    const double ratio = norms.front() > 0.0 ? norms[j] / norms.front() : (norms[j] > 0.0 ? kInfinity : 1.0);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_time = times[j];
    }
    if (norms[j] > limit) {
      report.pass = false;
    }
  }
  return report;
}

CriticalExponents critical_exponents(double m, double p, double q, int N) {
  const double mp = m * (p - 1.0);
  if (!(m > 1.0) || !(p > 1.0) || !(p < N) || !(mp >= 1.0) || !(q > mp)) {
    throw ParameterError("critical_exponents: need q > m(p-1) >= 1, m > 1 and 1 < p < N");
  }
  const double n = static_cast<double>(N);
  return CriticalExponents{fujita_exponent(m, p, n), q0_exponent(m, p, q, n)};
}

SmoothingBoundReport check_smoothing_bound(const SolveRun& run, const SmoothingBoundSpec& spec) {
  if (run.termination.kind != Termination::completed) {
    throw NotApplicable("smoothing bounds apply to runs that completed without blow-up");
  }
  const double m = run.params.m;
  const double p = run.params.p;
  const double N = run.grid.manifold().dimension();
  if (!(m * (p - 1.0) > 1.0)) {
    throw ParameterError("smoothing exponents need m(p-1) > 1");
  }
  SmoothingExponents<double> e{};
  double datum_norm = 0.0;
  std::span<const double> target = run.history.sup();
  switch (spec.kind) {
    case SmoothingKind::l1_to_linf:
      e = l1_linf_exponents(m, p, N);
      datum_norm = lebesgue_norm(run.grid, run.initial_state, 1.0);
      break;
    case SmoothingKind::ls_to_linf:
      if (!(spec.r > spec.s) || !(spec.s >= 1.0)) {
        throw ParameterError("ls_to_linf needs r > s >= 1");
      }
      e = ls_linf_exponents(m, p, N, spec.r, spec.s);
      datum_norm = lebesgue_norm(run.grid, run.initial_state, spec.s);
      break;
    case SmoothingKind::ls0_to_ls:
      if (!(spec.s > 1.0) || !(spec.r >= spec.s)) {
        throw ParameterError("ls0_to_ls needs 1 < s0 <= s");
      }
      e = ls0_ls_exponents(m, p, spec.s, spec.r);
      datum_norm = lebesgue_norm(run.grid, run.initial_state, spec.s);
      target = run.history.series(spec.r);
      break;
  }

  SmoothingBoundReport report;
  report.time_exponent = e.time;
  report.datum_exponent = e.datum;
  const auto times = run.history.times();
  if (datum_norm > 0.0) {
    const double scale = std::pow(datum_norm, e.datum);
    for (std::size_t j = 0; j < times.size(); ++j) {
      if (!(times[j] > 0.0)) {
        continue;
      }
      const double gamma = target[j] * std::pow(times[j], e.time) / scale;
      if (gamma > report.gamma_star) {
        report.gamma_star = gamma;
        report.worst_time = times[j];
      }
    }
  }
  report.pass = !spec.constant || report.gamma_star <= *spec.constant;
  return report;
}

}  // namespace leibenson
