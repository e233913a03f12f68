#pragma once

#include <array>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/types.hpp"

namespace gq {

using Polygon = std::vector<std::array<Real, 2>>;

/// Exact Voronoi cell of each centroid clipped to the square
/// [-extent, extent]^2, computed by halfplane clipping. Vertices are in
/// counterclockwise order; shadowed cells come back empty.
std::vector<Polygon> clipped_voronoi_cells(const Codebook& cb, Real extent);

Real polygon_area(const Polygon& polygon);

}  // namespace gq
