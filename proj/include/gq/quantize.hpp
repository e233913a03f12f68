#pragma once

#include <span>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/types.hpp"

namespace gq {

/// Exact nearest-centroid search over a uniform bucket grid whose cell side
/// tracks the expected nearest-neighbor spacing. Queries expand bucket rings
/// outward until the remaining rings provably cannot beat the best candidate,
/// so results (including smallest-index tie-breaking) match a full linear
/// scan distance-for-distance.
class NearestCentroid {
 public:
  explicit NearestCentroid(const Codebook& cb);

  /// 0-based position of the nearest centroid; optionally reports the
  /// squared distance.
  int nearest(Real x, Real y, Real* dist2 = nullptr) const;

  int size() const { return static_cast<int>(cx_.size()); }

 private:
  ArrayXr cx_, cy_;
  int buckets_ = 1;      // per axis
  Real lo_ = 0;          // bucket region origin (both axes)
  Real side_ = 1;        // bucket side length
  std::vector<int> cell_start_;  // CSR offsets into items_
  std::vector<int> items_;       // centroid positions grouped by bucket

  void scan_cell(int bx, int by, Real x, Real y, Real& best_d2,
                 int& best_pos) const;
};

/// Spiral index n (1-based) of the centroid nearest to point; ties go to the
/// smallest index.
int quantize(const Codebook& cb, Complex point);

/// Elementwise quantize. Large batches are processed in parallel; the result
/// never depends on the worker count.
std::vector<int> quantize_batch(const Codebook& cb,
                                std::span<const Complex> points);

}  // namespace gq
