#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "leibenson/errors.hpp"
#include "leibenson/grid.hpp"
#include "leibenson/kernels.hpp"
#include "leibenson/operators.hpp"
#include "leibenson/oracles.hpp"

using namespace leibenson;
using std::numbers::pi;

TEST_CASE("cell volumes partition the ball") {
  const RadialGrid e(ModelManifold::euclidean(3), 1.0, 8);
  CHECK(e.total_volume() == doctest::Approx(4 * pi / 3).epsilon(1e-10));
  CHECK(e.inner_face_area(0) == 0.0);
  CHECK(e.spacing() == 0.125);
  CHECK(e.face_areas().back() == doctest::Approx(4 * pi).epsilon(1e-14));

  const auto h3 = ModelManifold::hyperbolic(3, 1.0);
  const RadialGrid h(h3, 2.0, 512);
  CHECK(h.total_volume() == doctest::Approx(h3.ball_volume(2.0)).epsilon(1e-10));
  CHECK(h.total_volume() == doctest::Approx(pi * (std::sinh(4.0) - 4.0)).epsilon(1e-10));
  CHECK(h.inner_face_area(0) == 0.0);

  const RadialGrid h2(ModelManifold::hyperbolic(2, 0.7), 1.0, 8);
  CHECK(h2.inner_face_area(0) == 0.0);
}

TEST_CASE("grid construction is validated") {
  const auto m = ModelManifold::euclidean(3);
  CHECK_THROWS_AS(RadialGrid(m, 0.0, 16), ConfigError);
  CHECK_THROWS_AS(RadialGrid(m, -1.0, 16), ConfigError);
  CHECK_THROWS_AS(RadialGrid(m, 1.0, 7), ConfigError);
}

TEST_CASE("stencil factor is the dimension at the origin cell") {
  for (int N : {2, 3, 4}) {
    const RadialGrid g(ModelManifold::euclidean(N), 1.0, 64);
    const double w0 = (g.inner_face_area(0) + g.face_areas()[0]) * g.spacing() / g.volumes()[0];
    CHECK(w0 == doctest::Approx(N).epsilon(1e-12));
    CHECK(g.stencil_factor() == doctest::Approx(N).epsilon(1e-12));
  }
}

TEST_CASE("operator annihilates constants away from the boundary") {
  const RadialGrid g(ModelManifold::hyperbolic(3, 1.0), 3.0, 64);
  const Field u(g.size(), 1.7);
  for (auto [m, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {2.0, 3.0}, {1.5, 1.6}}) {
    const Field L = dnl_operator(g, u, m, p);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      CHECK(L[i] == 0.0);
    }
    CHECK(L.back() < 0.0);
  }
}

TEST_CASE("Laplacian of R^2 - r^2 is -2N in the interior") {
  for (std::size_t n : {16u, 64u, 256u}) {
    const double R = 1.0;
    const RadialGrid g(ModelManifold::euclidean(3), R, n);
    Field u(n);
    const auto r = g.centers();
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = R * R - r[i] * r[i];
    }
    const Field L = linear_laplacian(g, u);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(L[i] == doctest::Approx(-6.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("p-Laplacian of u^m with w = u^m linear in r") {
  // w = 4 - r: D = -1, flux -|D| D = -1, so the operator is (psi^{N-1})' / psi^{N-1} * (-1).
  const int N = 3;
  for (const auto& manifold : {ModelManifold::euclidean(N), ModelManifold::hyperbolic(N, 1.0)}) {
    const std::size_t n = 1024;
    const RadialGrid g(manifold, 2.0, n);
    Field u(n);
    const auto r = g.centers();
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = std::sqrt(4.0 - r[i]);
    }
    const Field L = dnl_operator(g, u, 2.0, 3.0);
    for (std::size_t i = 16; i + 1 < n; ++i) {
      const double psi = manifold.warping(r[i]);
      const double dpsi = manifold.warping_derivative(r[i]);
      const double exact = -(N - 1) * dpsi / psi;
      CHECK(L[i] == doctest::Approx(exact).epsilon(1e-3));
    }
  }
}

TEST_CASE("telescoping: the weighted sum of the operator is the boundary flux") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (auto [m, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {3.0, 2.5}, {1.2, 1.5}}) {
    const RadialGrid g(ModelManifold::hyperbolic(3, 0.5), 2.0, 200);
    Field u(g.size());
    for (auto& x : u) {
      x = unif(rng);
    }
    Field out(g.size());
    const double boundary = kernels::flux_divergence_serial(g, u, m, p, out);
    double total = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      total += out[i] * g.volumes()[i];
      scale += std::abs(out[i] * g.volumes()[i]);
    }
    CHECK(std::abs(total - boundary) <= 1e-13 * scale);
  }
}

TEST_CASE("finite propagation: no action where the stencil vanishes") {
  const RadialGrid g(ModelManifold::euclidean(3), 4.0, 128);
  Field u(g.size(), 0.0);
  for (std::size_t i = 0; i < 40; ++i) {
    u[i] = 1.0 - static_cast<double>(i) / 40.0 + 0.01;
  }
  for (auto [m, p] : {std::pair{2.0, 2.0}, {1.0, 3.0}, {1.5, 2.5}}) {
    const Field L = dnl_operator(g, u, m, p);
    CHECK(L[40] != 0.0);
    for (std::size_t i = 41; i < g.size(); ++i) {
      CHECK(L[i] == 0.0);
    }
  }
}

TEST_CASE("flux is odd in w") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const RadialGrid g(ModelManifold::euclidean(2), 1.0, 50);
  Field u(g.size());
  for (auto& x : u) {
    x = gauss(rng);
  }
  Field minus(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    minus[i] = -u[i];
  }
  for (auto [m, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {3.0, 1.7}, {1.5, 3.0}}) {
    const Field a = dnl_operator(g, u, m, p);
    const Field b = dnl_operator(g, minus, m, p);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(a[i] == -b[i]);
    }
  }
}

namespace {

/// L2 error of the discrete Delta(u^2) for u = 2 + cos(r) on [0, 1] in R^3,
/// leaving out the boundary cell where the Dirichlet ghost is inconsistent with u.
double smooth_error(std::size_t n) {
  const RadialGrid g(ModelManifold::euclidean(3), 1.0, n);
  const auto r = g.centers();
  Field u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = 2.0 + std::cos(r[i]);
  }
  const Field L = dnl_operator(g, u, 2.0, 2.0);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double x = r[i];
    const double w1 = -2.0 * (2.0 + std::cos(x)) * std::sin(x);
    const double w2 = 2.0 * std::sin(x) * std::sin(x) - 2.0 * (2.0 + std::cos(x)) * std::cos(x);
    const double exact = w2 + 2.0 / x * w1;
    err += (L[i] - exact) * (L[i] - exact) * g.volumes()[i];
  }
  return std::sqrt(err);
}

}  // namespace

TEST_CASE("second-order accuracy for smooth positive data") {
  const double e1 = smooth_error(64);
  const double e2 = smooth_error(128);
  const double e3 = smooth_error(256);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("linear Laplacian is the m = 1, p = 2 operator") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const RadialGrid g(ModelManifold::hyperbolic(4, 2.0), 1.5, 77);
  Field u(g.size());
  for (auto& x : u) {
    x = unif(rng);
  }
  const Field a = linear_laplacian(g, u);
  const Field b = dnl_operator(g, u, 1.0, 2.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(a[i] == b[i]);
  }
}

TEST_CASE("operator input validation") {
  const RadialGrid g(ModelManifold::euclidean(3), 1.0, 16);
  Field u(16, 1.0);
  CHECK_THROWS_AS(dnl_operator(g, u, 2.0, 1.0), ParameterError);
  CHECK_THROWS_AS(dnl_operator(g, u, 2.0, 0.5), ParameterError);
  CHECK_THROWS_AS(dnl_operator(g, u, 0.0, 2.0), ParameterError);
  u[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(dnl_operator(g, u, 2.0, 2.0), NumericalError);
  CHECK_THROWS_AS(dnl_operator(g, Field(15, 1.0), 2.0, 2.0), DomainError);
}

TEST_CASE("Lebesgue norms") {
  const RadialGrid g(ModelManifold::euclidean(3), 1.0, 64);
  CHECK(lebesgue_norm(g, Field(64, 1.0), 1.0) == doctest::Approx(4 * pi / 3).epsilon(1e-12));
  CHECK(lebesgue_norm(g, Field(64, 2.0), std::numeric_limits<double>::infinity()) == 2.0);
  CHECK(lebesgue_norm(g, Field(64, 2.0), 2.0) == doctest::Approx(2.0 * std::sqrt(4 * pi / 3)).epsilon(1e-12));
  CHECK(lebesgue_norm(g, Field(64, 0.0), 3.0) == 0.0);
  CHECK_THROWS_AS(lebesgue_norm(g, Field(64, 1.0), 0.5), ParameterError);

  const RadialGrid big(ModelManifold::euclidean(3), 4.0, 1024);
  const BarenblattProfile b(BarenblattSpec{2.0, 2.0, 3, 1.0, 1.0});
  CHECK(lebesgue_norm(big, b.sample(big, 1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("abs_pow fast paths agree with pow") {
  for (double x : {0.0, 0.3, 1.0, 2.7, -1.9}) {
    for (double s : {1.0, 1.5, 2.0, 3.0, 4.0, 2.2, 5.0}) {
      CHECK(abs_pow(x, s) == doctest::Approx(std::pow(std::abs(x), s)).epsilon(1e-14));
    }
  }
}

TEST_CASE("threaded kernels are bitwise identical to the serial reference") {
  if (!openmp_available()) {
    return;
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (auto [m, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {2.0, 3.0}, {1.7, 1.4}, {3.0, 2.2}}) {
    for (std::size_t n : {8u, 257u, 4096u}) {
      const RadialGrid g(ModelManifold::hyperbolic(3, 1.0), 3.0, n);
      Field u(n);
      for (auto& x : u) {
        x = unif(rng) * (unif(rng) > 1.0 ? 1.0 : 0.0);
      }
      Field a(n);
      Field b(n);
      const double ba = kernels::flux_divergence_serial(g, u, m, p, a);
      const double bb = kernels::flux_divergence_openmp(g, u, m, p, b);
      CHECK(ba == bb);
      CHECK(a == b);
      CHECK(kernels::max_diffusivity_serial(g, u, m, p) == kernels::max_diffusivity_openmp(g, u, m, p));
    }
  }
}

TEST_CASE("pairwise summation is exact on integers and order independent of threading") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<double>(i);
  }
  CHECK(pairwise_sum(v) == 499500.0);
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}
