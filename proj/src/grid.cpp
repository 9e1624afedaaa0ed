#include "leibenson/grid.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "leibenson/errors.hpp"

namespace leibenson {

RadialGrid::RadialGrid(const ModelManifold& manifold, double R, std::size_t n_cells)
    : manifold_(manifold), R_(R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw ConfigError("grid radius R must be positive and finite");
  }
  if (n_cells < min_cells) {
    throw ConfigError("grid needs at least " + std::to_string(min_cells) + " cells, got " +
                      std::to_string(n_cells));
  }
  if (R > manifold.max_radius()) {
    throw ConfigError("grid radius exceeds the range of the warping function");
  }
  dr_ = R / static_cast<double>(n_cells);
  centers_.resize(n_cells);
  volumes_.resize(n_cells);
  face_areas_.resize(n_cells);

  // Cells are short against the scale of the warping, so a fixed 15-point
  // rule is exact to rounding; adaptive refinement would only chase noise.
  using boost::math::quadrature::gauss;
  auto density = [this](double r) { return manifold_.volume_density(r); };
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double a = static_cast<double>(i) * dr_;
    // The last face sits exactly on R.
    const double b = (i + 1 == n_cells) ? R : static_cast<double>(i + 1) * dr_;
    centers_[i] = 0.5 * (a + b);
    volumes_[i] = gauss<double, 15>::integrate(density, a, b);
    face_areas_[i] = manifold_.volume_density(b);
  }
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double weight = (inner_face_area(i) + face_areas_[i]) * dr_ / volumes_[i];
    stencil_factor_ = std::max(stencil_factor_, weight);
  }
  total_volume_ = pairwise_sum(volumes_);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t block = 32;
  if (values.size() <= block) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace leibenson
