#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "leibenson/errors.hpp"
#include "leibenson/evolution.hpp"
#include "leibenson/norm_history.hpp"

namespace leibenson {

/// S(t_j) = max_{tau <= t_j} tau ||u(tau)||_inf^{q-1}, a running maximum over recorded samples.
std::vector<double> s_monitor(const NormHistory& history, double q);

/// F(t_j) = max_{tau <= t_j} int u^s, the running maximum of ||u||_s^s.
std::vector<double> f_monitor(const NormHistory& history, double s);

/// M(t_j) = max_{tau <= t_j} int u.
std::vector<double> m_monitor(const NormHistory& history);

struct ExitTimes {
  double T = std::numeric_limits<double>::infinity();
  double T_F = std::numeric_limits<double>::infinity();
  double T_M = std::numeric_limits<double>::infinity();
};

/// First crossing times of S > 1, F > 2F(0) and M > 2M(0), linearly
/// interpolated between samples; +infinity when the run never crosses.
ExitTimes exit_times(const NormHistory& history, double q, double s);

struct DecayFit {
  double exponent = 0.0;   ///< slope of log ||u|| against log t
  double intercept = 0.0;  ///< log of the prefactor
  double residual = 0.0;   ///< max |log ||u|| - fit|
  std::size_t samples = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

/// Ordinary least squares of log ||u||_s on log t over samples with t in
/// [t_begin, t_end]. s = infinity selects the sup-norm. Needs >= 10 samples,
/// all with positive norm and t > 0.
DecayFit fit_decay(const NormHistory& history, double s, double t_begin, double t_end);

struct MonotonicityReport {
  bool pass = true;
  double s = 1.0;
  double initial_norm = 0.0;
  /// max_j ||u(t_j)||_s / ||u_0||_s (1 when the datum vanishes).
  double worst_ratio = 1.0;
  double worst_time = 0.0;
};

/// Checks ||u(t_j)||_s <= ||u_0||_s (1 + tol) on every sample.
MonotonicityReport check_ls_monotone(const NormHistory& history, double s, double tol);

struct CriticalExponents {
  double q_fujita = 0.0;  ///< m(p-1) + p/N
  double q0 = 0.0;        ///< (q - m(p-1)) N/p
};

/// Throws ParameterError unless q > m(p-1) >= 1, m > 1 and 1 < p < N.
CriticalExponents critical_exponents(double m, double p, double q, int N);

// Exponent arithmetic of the smoothing estimates, generic over the scalar so
// the same expressions can be evaluated in exact rational arithmetic.

template <class T>
struct SmoothingExponents {
  T time;   ///< bound decays like t^{-time}
  T datum;  ///< power of the datum norm
};

/// ||u(t)||_inf <= c t^{-N/(N[m(p-1)-1]+p)} ||u0||_1^{p/(N[m(p-1)-1]+p)}.
template <class T>
SmoothingExponents<T> l1_linf_exponents(T m, T p, T N) {
  const T d = N * (m * (p - T(1)) - T(1)) + p;
  return {N / d, p / d};
}

/// ||u(t)||_inf <= Gamma t^{-beta_{r,s}} ||u0||_s^{ps/(N[m(p-1)-1]+pr)}.
template <class T>
SmoothingExponents<T> ls_linf_exponents(T m, T p, T N, T r, T s) {
  const T mp1 = m * (p - T(1)) - T(1);
  const T datum = p * s / (N * mp1 + p * r);
  return {(T(1) / mp1) * (T(1) - datum), datum};
}

/// ||u(t)||_s <= C t^{-gamma_s} ||u0||_{s0}^{delta_s}.
template <class T>
SmoothingExponents<T> ls0_ls_exponents(T m, T p, T s0, T s) {
  return {s0 / (m * (p - T(1))) * (T(1) / s0 - T(1) / s), s0 / s};
}

template <class T>
T fujita_exponent(T m, T p, T N) {
  return m * (p - T(1)) + p / N;
}

template <class T>
T q0_exponent(T m, T p, T q, T N) {
  return (q - m * (p - T(1))) * N / p;
}

enum class SmoothingKind {
  l1_to_linf,  ///< L^1 -> L^inf decay of the Sobolev-only regime
  ls_to_linf,  ///< L^s -> L^inf decay with beta_{r,s} (Sobolev + Poincare)
  ls0_to_ls,   ///< L^{s0} -> L^s smoothing with gamma_s, delta_s
};

struct SmoothingBoundSpec {
  SmoothingKind kind = SmoothingKind::l1_to_linf;
  /// Source exponent: unused for l1_to_linf, s for ls_to_linf, s0 for ls0_to_ls.
  double s = 1.0;
  /// Auxiliary exponent: r > s for ls_to_linf, target s for ls0_to_ls.
  double r = 2.0;
  /// Constant to test against; absent means calibration only.
  std::optional<double> constant;
};

struct SmoothingBoundReport {
  double time_exponent = 0.0;
  double datum_exponent = 0.0;
  /// Smallest constant making the bound hold on every sample with t > 0.
  double gamma_star = 0.0;
  double worst_time = 0.0;
  bool pass = true;
};

/// Evaluates the right-hand side of the selected smoothing estimate along the
/// run and reports the minimal constant. NotApplicable for blow-up runs.
SmoothingBoundReport check_smoothing_bound(const SolveRun& run, const SmoothingBoundSpec& spec);

}  // namespace leibenson
