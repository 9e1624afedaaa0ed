#include <doctest.h>

#include <cmath>

#include "leibenson/errors.hpp"
#include "leibenson/ladder.hpp"

using namespace leibenson;

namespace {

LadderConfig base_config(double amplitude) {
  LadderConfig c;
  c.dr = 1.0 / 16.0;
  c.params.q = 3.0;
  c.params.t_end = 0.05;
  c.datum = [amplitude](double r) {
    const double x = 1.0 - r * r;
    return x > 0.0 ? amplitude * x * x * x : 0.0;
  };
  c.probe_times = {0.01, 0.05};
  return c;
}

}  // namespace

TEST_CASE("ladder cutoff and capped datum") {
  CHECK(ladder_cutoff(0.0) == 1.0);
  CHECK(ladder_cutoff(1.0) == 1.0);
  CHECK(ladder_cutoff(2.0) == 0.0);
  CHECK(ladder_cutoff(5.0) == 0.0);
  CHECK(ladder_cutoff(1.5) > 0.0);
  CHECK(ladder_cutoff(1.5) < 1.0);
  const RadialProfile u0 = [](double r) { return 10.0 / (1.0 + r); };
  CHECK(ladder_datum(u0, kInfinity, 3.0) == 2.5);
  CHECK(ladder_datum(u0, 4.0, 0.0) == 4.0);
  CHECK(ladder_datum(u0, 4.0, 3.0) == 2.5);
  CHECK(ladder_datum(u0, 4.0, 8.0) == 0.0);
  for (double h : {1.0, 2.0, 4.0, 8.0}) {
    for (double r = 0.0; r < 20.0; r += 0.25) {
      CHECK(ladder_datum(u0, h, r) <= ladder_datum(u0, 2.0 * h, r));
    }
  }
}

TEST_CASE("identical levels coincide") {
  auto c = base_config(1.0);
  c.levels = {{5.0, 2.0, kInfinity}, {5.0, 2.0, kInfinity}};
  const auto report = ladder_run(c);
  REQUIRE(report.gaps.size() == 2);
  for (const auto& gap : report.gaps) {
    CHECK(gap.sup_diff == 0.0);
    CHECK(gap.l1_diff == 0.0);
  }
  REQUIRE(report.converged_at.has_value());
  CHECK(*report.converged_at == 0);
  CHECK(report.complete);
}

TEST_CASE("enlarging the ball beyond the support changes nothing") {
  auto c = base_config(1.0);
  c.levels = {{kInfinity, 2.0, kInfinity}, {kInfinity, 4.0, kInfinity}};
  const auto report = ladder_run(c);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.levels[0].n_cells == 32);
  CHECK(report.levels[1].n_cells == 64);
  CHECK(report.max_gap(0) < 1e-12);
  CHECK(report.pointwise_monotone);
}

TEST_CASE("raising the truncation level raises the solution") {
  auto c = base_config(2.0);
  c.params.t_end = 0.1;
  c.probe_times = {0.02, 0.05, 0.1};
  c.levels = {{1.0, 2.0, kInfinity}, {2.0, 2.0, kInfinity}, {kInfinity, 2.0, kInfinity}};
  const auto report = ladder_run(c);
  CHECK(report.complete);
  CHECK(report.pointwise_monotone);
  CHECK(report.norms_monotone);
  for (const auto& gap : report.gaps) {
    CHECK(gap.overshoot == 0.0);
    CHECK(gap.sup_diff > 0.0);
  }
  CHECK_FALSE(report.converged_at.has_value());
}

TEST_CASE("ladder validation lists every problem") {
  auto c = base_config(1.0);
  c.levels = {{2.0, 2.0, kInfinity}, {1.0, 2.0, kInfinity}};
  CHECK_THROWS_AS(ladder_run(c), ConfigError);
  c.levels = {{1.0, 2.0, kInfinity}, {2.0, 1.0, kInfinity}};
  CHECK_THROWS_AS(ladder_run(c), ConfigError);
  c.levels = {{1.0, 2.0, kInfinity}, {1.0, 2.03, kInfinity}};
  CHECK_THROWS_AS(ladder_run(c), ConfigError);
  c.levels = {{1.0, 2.0, kInfinity}};
  CHECK_THROWS_AS(ladder_run(c), ConfigError);
  c.levels = {{1.0, 2.0, kInfinity}, {1.0, 2.0, kInfinity}};
  c.probe_times = {};
  CHECK_THROWS_AS(ladder_run(c), ConfigError);
  c.levels = {{3.0, 2.0, 4.0}, {2.0, 2.0, 2.0}};
  c.probe_times = {0.02, 0.01};
  try {
    ladder_run(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("not above") != std::string::npos);
    CHECK(what.find("probe") != std::string::npos);
  }
}
