#pragma once

#include "leibenson/harness/config.hpp"
#include "leibenson/ladder.hpp"

namespace leibenson::harness {

/// Radial profile of the configured datum. Bumps are A (1 - r^2/rho^2)_+^3;
/// file data are two columns (r, u) interpolated linearly and zero beyond
/// the last radius.
RadialProfile datum_profile(const DatumSpec& spec, double m, double p, int N);

/// Cell-centre samples of the datum.
Field sample_datum(const RadialProfile& profile, const RadialGrid& grid);

}  // namespace leibenson::harness
