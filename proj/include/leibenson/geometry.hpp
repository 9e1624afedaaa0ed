#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace leibenson {

enum class WarpingKind { euclidean, hyperbolic, tabulated };

/// Rotationally symmetric model manifold with metric dr^2 + psi(r)^2 dtheta^2.
///
/// The Riemannian measure of the geodesic sphere of radius r is
/// omega_{N-1} psi(r)^{N-1}, where omega_{N-1} is the area of the Euclidean
/// unit sphere in R^N. Instances are immutable and cheap to copy; a tabulated
/// warping shares its interpolant between copies.
class ModelManifold {
 public:
  static ModelManifold euclidean(int dimension);
  /// Constant sectional curvature -c: psi(r) = sinh(sqrt(c) r) / sqrt(c).
  static ModelManifold hyperbolic(int dimension, double curvature);
  /// Monotone cubic (PCHIP) interpolation of samples (r_j, psi_j).
  /// Requires r_0 = 0, psi_0 = 0, strictly increasing r, psi > 0 for r > 0.
  static ModelManifold tabulated(int dimension, std::vector<double> r, std::vector<double> psi);
  /// Reads a two-column text file (r, psi); '#' starts a comment.
  static ModelManifold from_file(int dimension, const std::filesystem::path& path);

  int dimension() const { return dimension_; }
  WarpingKind kind() const { return kind_; }
  /// c for hyperbolic models, 0 otherwise.
  double curvature() const { return curvature_; }
  /// Largest radius at which psi is defined (finite only for tabulated warpings).
  double max_radius() const;

  double warping(double r) const;
  double warping_derivative(double r) const;
  /// omega_{N-1} psi(r)^{N-1}; defined (and zero) at r = 0.
  double volume_density(double r) const;
  double sphere_area(double r) const;
  /// mu(B_R) by adaptive Gauss-Kronrod quadrature of the volume density.
  double ball_volume(double R) const;
  double unit_sphere_area() const { return omega_; }

  std::string name() const;

 private:
  struct Table;

  ModelManifold(int dimension, WarpingKind kind, double curvature);
  void check_radius(double r) const;

  int dimension_ = 2;
  WarpingKind kind_ = WarpingKind::euclidean;
  double curvature_ = 0.0;
  double sqrt_c_ = 0.0;
  double omega_ = 0.0;
  std::shared_ptr<const Table> table_;
};

/// Area of the Euclidean unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dimension);

double warping(const ModelManifold& manifold, double r);
double sphere_area(const ModelManifold& manifold, double r);
double ball_volume(const ModelManifold& manifold, double R);

}  // namespace leibenson
