#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "leibenson/errors.hpp"
#include "leibenson/geometry.hpp"

using namespace leibenson;
using std::numbers::pi;

TEST_CASE("warping functions of the closed-form models") {
  CHECK(ModelManifold::euclidean(3).warping(2.0) == 2.0);
  CHECK(ModelManifold::hyperbolic(3, 1.0).warping(0.0) == 0.0);
  CHECK(ModelManifold::hyperbolic(3, 4.0).warping(1.0) == doctest::Approx(1.81343).epsilon(1e-5));
  CHECK(ModelManifold::hyperbolic(3, 4.0).warping(1.0) == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-15));
  CHECK(ModelManifold::hyperbolic(2, 2.0).warping_derivative(0.0) == 1.0);
  CHECK_THROWS_AS(ModelManifold::euclidean(3).warping(-1e-9), DomainError);
}

TEST_CASE("unit sphere areas match the low-dimensional closed forms") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(unit_sphere_area(4) == doctest::Approx(2 * pi * pi).epsilon(1e-14));
  CHECK(unit_sphere_area(5) == doctest::Approx(8 * pi * pi / 3).epsilon(1e-14));
  CHECK(unit_sphere_area(6) == doctest::Approx(pi * pi * pi).epsilon(1e-14));
}

TEST_CASE("sphere areas") {
  CHECK(ModelManifold::euclidean(3).sphere_area(2.0) == doctest::Approx(16 * pi).epsilon(1e-14));
  CHECK(ModelManifold::euclidean(3).sphere_area(2.0) == doctest::Approx(50.2655).epsilon(1e-5));
  CHECK(ModelManifold::euclidean(2).sphere_area(1.0) == doctest::Approx(2 * pi).epsilon(1e-14));
  const double s1 = std::sinh(1.0);
  CHECK(ModelManifold::hyperbolic(3, 1.0).sphere_area(1.0) == doctest::Approx(4 * pi * s1 * s1).epsilon(1e-14));
  CHECK(ModelManifold::hyperbolic(3, 1.0).sphere_area(1.0) == doctest::Approx(17.3553874).epsilon(1e-6));
  CHECK_THROWS_AS(ModelManifold::euclidean(3).sphere_area(0.0), DomainError);
  CHECK_THROWS_AS(ModelManifold::euclidean(3).sphere_area(-1.0), DomainError);
}

TEST_CASE("ball volumes against closed forms") {
  CHECK(ModelManifold::euclidean(3).ball_volume(1.0) == doctest::Approx(4 * pi / 3).epsilon(1e-10));
  CHECK(ModelManifold::euclidean(4).ball_volume(2.0) == doctest::Approx(pi * pi / 2 * 16).epsilon(1e-10));
  CHECK(ModelManifold::euclidean(4).ball_volume(2.0) == doctest::Approx(78.9568).epsilon(1e-6));
  CHECK(ModelManifold::hyperbolic(3, 1.0).ball_volume(1.0) == doctest::Approx(pi * (std::sinh(2.0) - 2.0)).epsilon(1e-10));
  CHECK(ModelManifold::hyperbolic(3, 1.0).ball_volume(1.0) == doctest::Approx(5.11091).epsilon(1e-5));
  // 4 pi / c * (sinh(2 sqrt(c) R) / (4 sqrt(c)) - R / 2)
  const double c = 2.5;
  const double R = 3.0;
  const double sc = std::sqrt(c);
  const double exact = 4 * pi / c * (std::sinh(2 * sc * R) / (4 * sc) - R / 2);
  CHECK(ModelManifold::hyperbolic(3, c).ball_volume(R) == doctest::Approx(exact).epsilon(1e-10));
  CHECK_THROWS_AS(ModelManifold::euclidean(3).ball_volume(0.0), DomainError);
}

TEST_CASE("hyperbolic spheres dominate euclidean ones") {
  for (double c : {0.1, 1.0, 4.0}) {
    for (int N : {2, 3, 5}) {
      const auto h = ModelManifold::hyperbolic(N, c);
      const auto e = ModelManifold::euclidean(N);
      for (double r = 1e-4; r < 20.0; r *= 1.7) {
        CHECK(h.sphere_area(r) >= e.sphere_area(r));
      }
      CHECK(h.sphere_area(1e-6) / e.sphere_area(1e-6) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("derivative of the ball volume is the sphere area") {
  for (const auto& m : {ModelManifold::euclidean(3), ModelManifold::hyperbolic(3, 1.0), ModelManifold::hyperbolic(4, 0.5)}) {
    for (double R : {0.3, 1.0, 2.5}) {
      const double h = 1e-4 * R;
      const double derivative = (m.ball_volume(R + h) - m.ball_volume(R - h)) / (2 * h);
      CHECK(derivative == doctest::Approx(m.sphere_area(R)).epsilon(1e-6));
    }
  }
}

TEST_CASE("small balls look euclidean") {
  for (const auto& m : {ModelManifold::hyperbolic(3, 1.0), ModelManifold::hyperbolic(2, 3.0)}) {
    const auto e = ModelManifold::euclidean(m.dimension());
    CHECK(m.ball_volume(1e-3) / e.ball_volume(1e-3) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("dimension and curvature are validated") {
  CHECK_THROWS_AS(ModelManifold::euclidean(1), ConfigError);
  CHECK_THROWS_AS(ModelManifold::hyperbolic(3, 0.0), ConfigError);
  CHECK_THROWS_AS(ModelManifold::hyperbolic(3, -1.0), ConfigError);
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = a + (b - a) * i / (n - 1);
  }
  return x;
}

}  // namespace

TEST_CASE("tabulated warping reproduces sinh") {
  const auto r = linspace(0.0, 4.0, 401);
  std::vector<double> psi;
  for (double x : r) {
    psi.push_back(std::sinh(x));
  }
  const auto t = ModelManifold::tabulated(3, r, psi);
  const auto h = ModelManifold::hyperbolic(3, 1.0);
  for (double x : {0.0, 0.013, 0.5, 1.234, 3.99}) {
    CHECK(t.warping(x) == doctest::Approx(h.warping(x)).epsilon(1e-5));
    CHECK(t.warping_derivative(x) == doctest::Approx(h.warping_derivative(x)).epsilon(1e-3));
  }
  CHECK(t.ball_volume(3.0) == doctest::Approx(h.ball_volume(3.0)).epsilon(1e-5));
  CHECK(t.max_radius() == 4.0);
  CHECK_THROWS_AS(t.warping(4.5), DomainError);
}

TEST_CASE("tabulated warping rejects bad tables") {
  CHECK_THROWS_AS(ModelManifold::tabulated(3, {0.0, 1.0}, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(ModelManifold::tabulated(3, {0.1, 1.0, 2.0}, {0.1, 1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(ModelManifold::tabulated(3, {0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(ModelManifold::tabulated(3, {0.0, 1.0, 2.0}, {0.0, -1.0, 2.0}), ConfigError);
  // psi'(0) = 1 is required.
  CHECK_THROWS_AS(ModelManifold::tabulated(3, {0.0, 0.1, 0.2}, {0.0, 0.2, 0.4}), ConfigError);
}

TEST_CASE("tabulated warping from a file") {
  const auto path = std::filesystem::temp_directory_path() / "leibenson_warping_test.txt";
  {
    std::ofstream out(path);
    out << "# r psi\n";
    for (double x : linspace(0.0, 2.0, 81)) {
      out << x << " " << x << "\n";
    }
  }
  const auto t = ModelManifold::from_file(2, path);
  CHECK(t.warping(1.3) == doctest::Approx(1.3).epsilon(1e-12));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ModelManifold::from_file(2, path), ConfigError);
}
