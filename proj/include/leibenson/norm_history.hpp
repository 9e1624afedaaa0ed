#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "leibenson/grid.hpp"

namespace leibenson {

/// Time series of Lebesgue norms of a run: sup-norm, L^1 and a configured set
/// of finite exponents s > 1, sampled at strictly increasing times.
class NormHistory {
 public:
  NormHistory() = default;
  /// Exponents equal to 1 or infinity are tracked anyway and dropped from the list.
  explicit NormHistory(std::vector<double> exponents);

  /// Appends the norms of `u` at time t (dt = step that produced it, 0 for the datum).
  void record(double t, double dt, const RadialGrid& grid, std::span<const double> u);
  /// Appends precomputed norms; `ls` is ordered like exponents().
  void append(double t, double dt, double sup, double l1, std::span<const double> ls);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& exponents() const { return exponents_; }
  std::span<const double> times() const { return times_; }
  std::span<const double> steps() const { return dts_; }
  std::span<const double> sup() const { return sup_; }
  std::span<const double> l1() const { return l1_; }

  bool has(double s) const;
  /// Norm series for exponent s (1 and infinity included). ConfigError if absent.
  std::span<const double> series(double s) const;

  /// CSV with header t,dt,sup,L1,L<s>... and %.17g values.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<double> exponents_;
  std::vector<double> times_;
  std::vector<double> dts_;
  std::vector<double> sup_;
  std::vector<double> l1_;
  std::vector<std::vector<double>> ls_;
};

}  // namespace leibenson
