#include "gq/quantize.hpp"

#include <algorithm>
#include <cmath>

#include "gq/parallel.hpp"

namespace gq {

namespace {

inline bool better(Real d2, int pos, Real best_d2, int best_pos) {
  return d2 < best_d2 || (d2 == best_d2 && pos < best_pos);
}

}  // namespace

NearestCentroid::NearestCentroid(const Codebook& cb) {
  const int n = cb.size();
  if (n < 1) throw DomainError("NearestCentroid: empty codebook");
  cx_.resize(n);
  cy_.resize(n);
  for (int p = 0; p < n; ++p) {
    const Complex c = cb.centroids[p];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("NearestCentroid: non-finite centroid");
    cx_[p] = c.real();
    cy_[p] = c.imag();
  }

  const Real xmin = std::min(cx_.minCoeff(), cy_.minCoeff());
  const Real xmax = std::max(cx_.maxCoeff(), cy_.maxCoeff());
  const Real span = xmax - xmin;
  // Cell side near the expected nearest-neighbor spacing of a Gaussian
  // high-rate layout; clamped so tiny or degenerate codebooks stay valid.
  const Real spacing = 0.5 * std::sqrt(2.0 * kPi * cb.sigma2 / n);
  if (span <= 0 || spacing <= 0) {
    buckets_ = 1;
    lo_ = xmin - 0.5;
    side_ = std::max(span, Real(1));
  } else {
    buckets_ = std::clamp(static_cast<int>(std::ceil(span / spacing)), 1, 768);
    lo_ = xmin;
    side_ = span / buckets_;
  }

  // counting sort of centroid positions into buckets (row-major)
  const int num_cells = buckets_ * buckets_;
  cell_start_.assign(num_cells + 1, 0);
  std::vector<int> cell_of(n);
  for (int p = 0; p < n; ++p) {
    int bx = static_cast<int>((cx_[p] - lo_) / side_);
    int by = static_cast<int>((cy_[p] - lo_) / side_);
    bx = std::clamp(bx, 0, buckets_ - 1);
    by = std::clamp(by, 0, buckets_ - 1);
    cell_of[p] = by * buckets_ + bx;
    ++cell_start_[cell_of[p] + 1];
  }
  for (int c = 0; c < num_cells; ++c) cell_start_[c + 1] += cell_start_[c];
  items_.resize(n);
  std::vector<int> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (int p = 0; p < n; ++p) items_[cursor[cell_of[p]]++] = p;
}

void NearestCentroid::scan_cell(int bx, int by, Real x, Real y, Real& best_d2,
                                int& best_pos) const {
  const int cell = by * buckets_ + bx;
  const int end = cell_start_[cell + 1];
  for (int k = cell_start_[cell]; k < end; ++k) {
    const int p = items_[k];
    const Real dx = x - cx_[p];
    const Real dy = y - cy_[p];
    const Real d2 = dx * dx + dy * dy;
    if (better(d2, p, best_d2, best_pos)) {
      best_d2 = d2;
      best_pos = p;
    }
  }
}

int NearestCentroid::nearest(Real x, Real y, Real* dist2) const {
  Real best_d2 = std::numeric_limits<Real>::infinity();
  int best_pos = size();

  // Virtual (unclamped) bucket of the query; rings are Chebyshev shells
  // around it, clipped to the bucket region. A centroid in ring r is at
  // least (r-1)*side away, which gives the stopping bound.
  const int qx = static_cast<int>(std::floor((x - lo_) / side_));
  const int qy = static_cast<int>(std::floor((y - lo_) / side_));

  const int max_ring =
      2 * buckets_ + std::max({std::abs(qx), std::abs(qy), 0});
  for (int r = 0; r <= max_ring; ++r) {
    if (best_pos < size()) {
      const Real bound = (r - 1) * side_;
      if (bound > 0 && bound * bound > best_d2) break;
    }
    const int x0 = std::max(qx - r, 0), x1 = std::min(qx + r, buckets_ - 1);
    const int y0 = std::max(qy - r, 0), y1 = std::min(qy + r, buckets_ - 1);
    if (x0 > x1 || y0 > y1) continue;
    if (r == 0) {
      scan_cell(x0, y0, x, y, best_d2, best_pos);
      continue;
    }
    const bool top = qy - r >= 0 && qy - r < buckets_;
    const bool bottom = qy + r >= 0 && qy + r < buckets_;
    const bool left = qx - r >= 0 && qx - r < buckets_;
    const bool right = qx + r >= 0 && qx + r < buckets_;
    if (top)
      for (int bx = x0; bx <= x1; ++bx) scan_cell(bx, qy - r, x, y, best_d2, best_pos);
    if (bottom)
      for (int bx = x0; bx <= x1; ++bx) scan_cell(bx, qy + r, x, y, best_d2, best_pos);
    const int yy0 = std::max(qy - r + 1, 0), yy1 = std::min(qy + r - 1, buckets_ - 1);
    if (left)
      for (int by = yy0; by <= yy1; ++by) scan_cell(qx - r, by, x, y, best_d2, best_pos);
    if (right)
      for (int by = yy0; by <= yy1; ++by) scan_cell(qx + r, by, x, y, best_d2, best_pos);
  }

  if (dist2) *dist2 = best_d2;
  return best_pos;
}

int quantize(const Codebook& cb, Complex point) {
  if (!std::isfinite(point.real()) || !std::isfinite(point.imag()))
    throw DomainError("quantize: point is not finite");
  NearestCentroid nn(cb);
  return nn.nearest(point.real(), point.imag()) + 1;
}

std::vector<int> quantize_batch(const Codebook& cb,
                                std::span<const Complex> points) {
  std::vector<int> out(points.size());
  if (points.empty()) return out;
  for (const Complex& p : points)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw DomainError("quantize_batch: point is not finite");
  const NearestCentroid nn(cb);
  const std::size_t chunk = 16384;
  const int num_blocks =
      static_cast<int>((points.size() + chunk - 1) / chunk);
  detail::run_blocks(num_blocks, [&](int b) {
    const std::size_t begin = static_cast<std::size_t>(b) * chunk;
    const std::size_t end = std::min(points.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i)
      out[i] = nn.nearest(points[i].real(), points[i].imag()) + 1;
  });
  return out;
}

}  // namespace gq
