#include "leibenson/geometry.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "leibenson/errors.hpp"

namespace leibenson {

struct ModelManifold::Table {
  boost::math::interpolators::pchip<std::vector<double>> spline;
  double r_max;
};

double unit_sphere_area(int dimension) {
  if (dimension < 1) {
    throw DomainError("unit_sphere_area: dimension must be positive");
  }
  const double half = 0.5 * dimension;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

ModelManifold::ModelManifold(int dimension, WarpingKind kind, double curvature)
    : dimension_(dimension), kind_(kind), curvature_(curvature) {
  if (dimension < 2) {
    throw ConfigError("model manifold dimension must be >= 2, got " + std::to_string(dimension));
  }
  omega_ = leibenson::unit_sphere_area(dimension);
  sqrt_c_ = std::sqrt(curvature);
}

ModelManifold ModelManifold::euclidean(int dimension) {
  return ModelManifold(dimension, WarpingKind::euclidean, 0.0);
}

ModelManifold ModelManifold::hyperbolic(int dimension, double curvature) {
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    throw ConfigError("hyperbolic model needs curvature c > 0");
  }
  return ModelManifold(dimension, WarpingKind::hyperbolic, curvature);
}

ModelManifold ModelManifold::tabulated(int dimension, std::vector<double> r, std::vector<double> psi) {
  if (r.size() != psi.size() || r.size() < 3) {
    throw ConfigError("tabulated warping needs at least 3 (r, psi) samples");
  }
  if (r.front() != 0.0 || psi.front() != 0.0) {
    throw ConfigError("tabulated warping must start at (0, 0)");
  }
  for (std::size_t j = 1; j < r.size(); ++j) {
    if (!(r[j] > r[j - 1])) {
      throw ConfigError("tabulated warping radii must be strictly increasing");
    }
    if (!(psi[j] > 0.0) || !std::isfinite(psi[j])) {
      throw ConfigError("tabulated warping must be positive for r > 0");
    }
  }
  // psi'(0) = 1 up to the resolution of the first sample.
  if (std::abs(psi[1] / r[1] - 1.0) > 0.05) {
    throw ConfigError("tabulated warping must satisfy psi'(0) = 1");
  }
  ModelManifold out(dimension, WarpingKind::tabulated, 0.0);
  const double r_max = r.back();
  out.table_ = std::make_shared<const Table>(
      Table{boost::math::interpolators::pchip<std::vector<double>>(std::move(r), std::move(psi)), r_max});
  return out;
}

ModelManifold ModelManifold::from_file(int dimension, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open warping file " + path.string());
  }
  std::vector<double> r;
  std::vector<double> psi;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (fields >> a >> b) {
      r.push_back(a);
      psi.push_back(b);
    }
  }
  return tabulated(dimension, std::move(r), std::move(psi));
}

double ModelManifold::max_radius() const {
  return table_ ? table_->r_max : std::numeric_limits<double>::infinity();
}

void ModelManifold::check_radius(double r) const {
  if (!(r >= 0.0)) {
    throw DomainError("radius must be non-negative");
  }
  if (table_ && r > table_->r_max) {
    throw DomainError("radius beyond the tabulated warping range");
  }
}

double ModelManifold::warping(double r) const {
  check_radius(r);
  switch (kind_) {
    case WarpingKind::euclidean:
      return r;
    case WarpingKind::hyperbolic:
      return std::sinh(sqrt_c_ * r) / sqrt_c_;
    case WarpingKind::tabulated:
      return table_->spline(r);
  }
  return r;
}

double ModelManifold::warping_derivative(double r) const {
  check_radius(r);
  switch (kind_) {
    case WarpingKind::euclidean:
      return 1.0;
    case WarpingKind::hyperbolic:
      return std::cosh(sqrt_c_ * r);
    case WarpingKind::tabulated:
      return table_->spline.prime(r);
  }
  return 1.0;
}

double ModelManifold::volume_density(double r) const {
  const double psi = warping(r);
  return omega_ * std::pow(psi, dimension_ - 1);
}

double ModelManifold::sphere_area(double r) const {
  if (!(r > 0.0)) {
    throw DomainError("sphere_area: radius must be positive");
  }
  return volume_density(r);
}

double ModelManifold::ball_volume(double R) const {
  if (!(R > 0.0)) {
    throw DomainError("ball_volume: radius must be positive");
  }
  check_radius(R);
  using boost::math::quadrature::gauss_kronrod;
  // Rescaled to an O(1) integrand on [0, 1]; the Kronrod error estimate has an
  // absolute floor that tiny balls would otherwise never get under.
  const double peak = volume_density(R);
  auto shape = [this, R, peak](double s) { return volume_density(R * s) / peak; };
  return R * peak * gauss_kronrod<double, 31>::integrate(shape, 0.0, 1.0, 20, 1e-13);
}

std::string ModelManifold::name() const {
  std::ostringstream out;
  switch (kind_) {
    case WarpingKind::euclidean:
      out << "euclidean(N=" << dimension_ << ")";
      break;
    case WarpingKind::hyperbolic:
      out << "hyperbolic(N=" << dimension_ << ", c=" << curvature_ << ")";
      break;
    case WarpingKind::tabulated:
      out << "tabulated(N=" << dimension_ << ", r_max=" << table_->r_max << ")";
      break;
  }
  return out.str();
}

double warping(const ModelManifold& manifold, double r) { return manifold.warping(r); }
double sphere_area(const ModelManifold& manifold, double r) { return manifold.sphere_area(r); }
double ball_volume(const ModelManifold& manifold, double R) { return manifold.ball_volume(R); }

}  // namespace leibenson
