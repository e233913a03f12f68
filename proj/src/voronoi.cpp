#include "gq/voronoi.hpp"

#include <cmath>

namespace gq {

namespace {

// keeps the side of the halfplane n.(p - m) <= 0
Polygon clip_halfplane(const Polygon& poly, Real mx, Real my, Real nx,
                       Real ny) {
  Polygon out;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    const Real da = nx * (a[0] - mx) + ny * (a[1] - my);
    const Real db = nx * (b[0] - mx) + ny * (b[1] - my);
    if (da <= 0) out.push_back(a);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      const Real t = da / (da - db);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

}  // namespace

std::vector<Polygon> clipped_voronoi_cells(const Codebook& cb, Real extent) {
  if (!(extent > 0)) throw DomainError("clipped_voronoi_cells: extent must be > 0");
  const int n = cb.size();
  std::vector<Polygon> cells(n);
  for (int p = 0; p < n; ++p) {
    Polygon poly = {{-extent, -extent},
                    {extent, -extent},
                    {extent, extent},
                    {-extent, extent}};
    const Real px = cb.centroids[p].real(), py = cb.centroids[p].imag();
    for (int q = 0; q < n && !poly.empty(); ++q) {
      if (q == p) continue;
      const Real qx = cb.centroids[q].real(), qy = cb.centroids[q].imag();
      const Real nx = qx - px, ny = qy - py;
      if (nx == 0 && ny == 0) continue;  // duplicate centroid
      poly = clip_halfplane(poly, 0.5 * (px + qx), 0.5 * (py + qy), nx, ny);
    }
    cells[p] = std::move(poly);
  }
  return cells;
}

Real polygon_area(const Polygon& polygon) {
  const int n = static_cast<int>(polygon.size());
  if (n < 3) return 0;
  Real twice = 0;
  for (int i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::abs(twice);
}

}  // namespace gq
