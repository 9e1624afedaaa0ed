#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "leibenson/errors.hpp"
#include "leibenson/inequalities.hpp"

using namespace leibenson;

namespace {

QuotientProbe probe_on(ModelManifold manifold, TrialFamily family, std::size_t n_cells = 2048) {
  QuotientProbe probe;
  probe.manifold = std::move(manifold);
  probe.family = family;
  probe.n_cells = n_cells;
  return probe;
}

}  // namespace

TEST_CASE("quintic taper") {
  CHECK(quintic_taper(0.0) == 1.0);
  CHECK(quintic_taper(0.9) == 1.0);
  CHECK(quintic_taper(1.0) == 0.0);
  CHECK(quintic_taper(3.0) == 0.0);
  CHECK(quintic_taper(0.95) == doctest::Approx(0.5).epsilon(1e-14));
  for (double x = 0.0; x < 1.2; x += 0.001) {
    CHECK(quintic_taper(x + 0.001) <= quintic_taper(x));
  }
}

TEST_CASE("quotients are homogeneous of degree zero") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& manifold : {ModelManifold::euclidean(3), ModelManifold::hyperbolic(4, 2.0)}) {
    const auto probe = probe_on(manifold, TrialFamily::exp_taper(0.0, 1.0, 1.0, 4.0), 512);
    const RadialGrid g = member_grid(probe, {0.7, 2.0});
    const Field v = sample_member(probe, {0.7, 2.0}, g);
    for (int i = 0; i < 20; ++i) {
      const double c = (unif(rng) < 0.5 ? -1.0 : 1.0) * std::exp(20.0 * (unif(rng) - 0.5));
      Field w(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        w[j] = c * v[j];
      }
      CHECK(sobolev_quotient(probe, w, g) == doctest::Approx(sobolev_quotient(probe, v, g)).epsilon(1e-13));
      CHECK(poincare_quotient(probe, w, g) == doctest::Approx(poincare_quotient(probe, v, g)).epsilon(1e-13));
    }
  }
}

TEST_CASE("quotients reject vanishing or mismatched fields") {
  const auto probe = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(0.0, 1.0, 1.0, 4.0), 64);
  const RadialGrid g = member_grid(probe, {0.5, 2.0});
  CHECK_THROWS_AS(sobolev_quotient(probe, g.zeros(), g), DomainError);
  CHECK_THROWS_AS(poincare_quotient(probe, Field(3, 1.0), g), DomainError);
  auto wide = probe;
  wide.p = 3.0;
  CHECK_THROWS_AS(sobolev_quotient(wide, Field(g.size(), 1.0), g), ParameterError);
}

TEST_CASE("Euclidean Sobolev quotient is dilation invariant") {
  for (double p : {2.0, 1.5}) {
    auto probe = probe_on(ModelManifold::euclidean(3), TrialFamily::bump(0.1, 10.0, 0.0, 10.0));
    probe.p = p;
    const double base = member_quotient(probe, Inequality::sobolev, {1.0, 0.5});
    for (double lambda : {2.0, 4.0}) {
      const double dilated = member_quotient(probe, Inequality::sobolev, {lambda, 0.5 * lambda});
      CHECK(std::abs(dilated - base) <= 1e-4 * base);
    }
  }
}

TEST_CASE("Euclidean Poincare quotient scales like 1/lambda") {
  const auto probe = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(0.0, 4.0, 0.1, 100.0));
  const double base = member_quotient(probe, Inequality::poincare, {1.0, 2.0});
  for (double lambda : {2.0, 4.0, 8.0, 16.0}) {
    const double dilated = member_quotient(probe, Inequality::poincare, {1.0 / lambda, 2.0 * lambda});
    CHECK(std::abs(dilated * lambda - base) <= 1e-6 * base);
  }
}

TEST_CASE("quotients are stable under grid refinement") {
  for (const auto& manifold : {ModelManifold::euclidean(3), ModelManifold::hyperbolic(3, 1.0)}) {
    for (auto which : {Inequality::sobolev, Inequality::poincare}) {
      auto coarse = probe_on(manifold, TrialFamily::exp_taper(0.0, 4.0, 0.5, 8.0), 1024);
      auto fine = coarse;
      fine.n_cells = 2048;
      for (const TrialParams params : {TrialParams{0.5, 3.0}, TrialParams{2.0, 1.0}}) {
        const double a = member_quotient(coarse, which, params);
        const double b = member_quotient(fine, which, params);
        CHECK(std::abs(a - b) < 1e-3 * b);
      }
    }
  }
}

TEST_CASE("Aubin-Talenti trial sits near the searched Sobolev infimum") {
  // The 1/r tail makes the taper costly unless the cut sits far out.
  auto probe = probe_on(ModelManifold::euclidean(3), TrialFamily::power(0.5, 2.0, 0.3, 1.5, 1000.0), 4096);
  probe.max_spacing = 1.0 / 64.0;
  const double talenti = member_quotient(probe, Inequality::sobolev, {1.0, 0.5});
  const auto best = estimate_best_constant(probe, Inequality::sobolev);
  CHECK(best.infimum <= talenti * (1.0 + 1e-12));
  CHECK(talenti <= 1.05 * best.infimum);
  // Sharp constant sqrt(N(N-2)/4) |S^N|^{1/N} for N = 3.
  const double sharp = std::sqrt(0.75) * std::cbrt(2.0 * std::numbers::pi * std::numbers::pi);
  CHECK(best.infimum >= sharp * (1.0 - 1e-3));
  CHECK(best.infimum <= sharp * 1.05);
}

TEST_CASE("Euclidean Poincare infimum collapses under dilation") {
  auto probe = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(0.0, 1.0, 2.0, 16.0), 1024);
  const auto sweep = sweep_dilation(probe, Inequality::poincare, 4);
  REQUIRE(sweep.history.size() == 5);
  CHECK(sweep.strictly_decreasing);
  for (std::size_t j = 1; j < sweep.history.size(); ++j) {
    const double ratio = sweep.history[j].infimum / sweep.history[j - 1].infimum;
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.05));
    CHECK(sweep.history[j].range_max == 2.0 * sweep.history[j - 1].range_max);
  }
}

TEST_CASE("hyperbolic Poincare infimum respects the spectral gap") {
  auto probe = probe_on(ModelManifold::hyperbolic(3, 1.0), TrialFamily::exp_taper(0.0, 1.0, 2.0, 8.0), 1024);
  probe.max_spacing = 1.0 / 32.0;
  const auto best = estimate_best_constant(probe, Inequality::poincare);
  CHECK(best.infimum >= 0.9);
  CHECK(best.infimum < 1.5);
  CHECK(best.params[1] == doctest::Approx(8.0).epsilon(0.2));
}

TEST_CASE("Sobolev infima on flat and hyperbolic space agree within 30%") {
  const auto family = TrialFamily::power(0.05, 1.0, 0.3, 1.5, 20.0);
  const auto flat = estimate_best_constant(probe_on(ModelManifold::euclidean(3), family, 4096), Inequality::sobolev);
  const auto curved =
      estimate_best_constant(probe_on(ModelManifold::hyperbolic(3, 1.0), family, 4096), Inequality::sobolev);
  CHECK(flat.infimum > 0.0);
  CHECK(curved.infimum > 0.0);
  CHECK(std::abs(flat.infimum - curved.infimum) <= 0.3 * std::min(flat.infimum, curved.infimum));
}

TEST_CASE("searches are deterministic and honour warm starts") {
  const auto probe = probe_on(ModelManifold::hyperbolic(3, 1.0), TrialFamily::exp_taper(0.0, 2.0, 1.0, 4.0), 256);
  SearchOptions options;
  options.random_starts = 8;
  options.seed = 99;
  const auto a = estimate_best_constant(probe, Inequality::poincare, options);
  const auto b = estimate_best_constant(probe, Inequality::poincare, options);
  CHECK(a.infimum == b.infimum);
  CHECK(a.params == b.params);
  const auto warm = estimate_best_constant(probe, Inequality::poincare, options, a.params);
  CHECK(warm.infimum <= a.infimum);
}

TEST_CASE("degenerate families and boxes are configuration errors") {
  // exp(-b r) underflows at every cell centre.
  const auto dead = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(1e6, 2e6, 1.0, 2.0), 64);
  CHECK_THROWS_AS(estimate_best_constant(dead, Inequality::poincare), ConfigError);
  const auto inverted = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(1.0, 0.5, 1.0, 2.0), 64);
  CHECK_THROWS_AS(estimate_best_constant(inverted, Inequality::poincare), ConfigError);
  SearchOptions thin;
  thin.grid_points = 1;
  const auto fine = probe_on(ModelManifold::euclidean(3), TrialFamily::exp_taper(0.0, 1.0, 1.0, 2.0), 64);
  CHECK_THROWS_AS(estimate_best_constant(fine, Inequality::poincare, thin), ConfigError);
  CHECK_THROWS_AS(sweep_dilation(fine, Inequality::poincare, 0), ConfigError);
}
