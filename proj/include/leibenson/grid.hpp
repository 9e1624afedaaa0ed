#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "leibenson/geometry.hpp"

namespace leibenson {

/// Cell values of a radial field. Entry i belongs to cell [i dr, (i+1) dr].
using Field = std::vector<double>;

/// Uniform finite-volume mesh of the geodesic ball B_R of a model manifold.
///
/// Cell i spans [i dr, (i+1) dr] with centre (i + 1/2) dr. Face i is the
/// outer face of cell i (radius (i+1) dr), so face n-1 is the ball boundary.
/// The inner face of cell 0 is the origin, where the area vanishes.
class RadialGrid {
 public:
  static constexpr std::size_t min_cells = 8;

  RadialGrid(const ModelManifold& manifold, double R, std::size_t n_cells);

  const ModelManifold& manifold() const { return manifold_; }
  std::size_t size() const { return centers_.size(); }
  double outer_radius() const { return R_; }
  double spacing() const { return dr_; }

  std::span<const double> centers() const { return centers_; }
  std::span<const double> volumes() const { return volumes_; }
  /// Area of the outer face of each cell.
  std::span<const double> face_areas() const { return face_areas_; }
  double inner_face_area(std::size_t i) const { return i == 0 ? 0.0 : face_areas_[i - 1]; }

  /// max_i (A_inner + A_outer) dr / V_i: the explicit-stencil weight of the
  /// most constrained cell (N at the origin cell of every model).
  double stencil_factor() const { return stencil_factor_; }
  double total_volume() const { return total_volume_; }

  Field zeros() const { return Field(size(), 0.0); }

 private:
  ModelManifold manifold_;
  double R_;
  double dr_;
  std::vector<double> centers_;
  std::vector<double> volumes_;
  std::vector<double> face_areas_;
  double stencil_factor_ = 0.0;
  double total_volume_ = 0.0;
};

/// Pairwise (cascade) summation in ascending index order; the result only
/// depends on the input sequence, never on threading.
double pairwise_sum(std::span<const double> values);

}  // namespace leibenson
