#include "leibenson/norm_history.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "leibenson/errors.hpp"
#include "leibenson/operators.hpp"

namespace leibenson {

NormHistory::NormHistory(std::vector<double> exponents) {
  for (double s : exponents) {
    if (!(s >= 1.0)) {
      throw ConfigError("norm exponents must be >= 1");
    }
    if (s == 1.0 || std::isinf(s)) {
      continue;
    }
    if (std::find(exponents_.begin(), exponents_.end(), s) == exponents_.end()) {
      exponents_.push_back(s);
    }
  }
  ls_.resize(exponents_.size());
}

void NormHistory::record(double t, double dt, const RadialGrid& grid, std::span<const double> u) {
  // Trailing zero cells do not contribute; restricting the sums to the
  // support keeps the per-step cost proportional to the active region.
  std::size_t last = u.size();
  while (last > 0 && u[last - 1] == 0.0) {
    --last;
  }
  const auto volumes = grid.volumes();
  std::vector<double> terms(last);
  auto integral = [&](double s) {
    for (std::size_t i = 0; i < last; ++i) {
      terms[i] = u[i] == 0.0 ? 0.0 : abs_pow(u[i], s) * volumes[i];
    }
    return pairwise_sum(terms);
  };
  std::vector<double> ls(exponents_.size());
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    ls[j] = std::pow(integral(exponents_[j]), 1.0 / exponents_[j]);
  }
  append(t, dt, sup_norm(u), integral(1.0), ls);
}

void NormHistory::append(double t, double dt, double sup, double l1, std::span<const double> ls) {
  if (!times_.empty() && !(t > times_.back())) {
    throw DomainError("norm history times must be strictly increasing");
  }
  if (ls.size() != exponents_.size()) {
    throw DomainError("norm history: exponent count mismatch");
  }
  times_.push_back(t);
  dts_.push_back(dt);
  sup_.push_back(sup);
  l1_.push_back(l1);
  for (std::size_t j = 0; j < ls.size(); ++j) {
    ls_[j].push_back(ls[j]);
  }
}

bool NormHistory::has(double s) const {
  return s == 1.0 || std::isinf(s) || std::find(exponents_.begin(), exponents_.end(), s) != exponents_.end();
}

std::span<const double> NormHistory::series(double s) const {
  if (std::isinf(s)) {
    return sup_;
  }
  if (s == 1.0) {
    return l1_;
  }
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (exponents_[j] == s) {
      return ls_[j];
    }
  }
  throw ConfigError("norm history has no L^" + std::to_string(s) + " series");
}

void NormHistory::write_csv(std::ostream& out) const {
  char buffer[160];
  out << "t,dt,sup,L1";
  for (double s : exponents_) {
    std::snprintf(buffer, sizeof buffer, ",L%.17g", s);
    out << buffer;
  }
  out << '\n';
  for (std::size_t i = 0; i < times_.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%.17g,%.17g,%.17g,%.17g", times_[i], dts_[i], sup_[i], l1_[i]);
    out << buffer;
    for (const auto& series : ls_) {
      std::snprintf(buffer, sizeof buffer, ",%.17g", series[i]);
      out << buffer;
    }
    out << '\n';
  }
}

}  // namespace leibenson
