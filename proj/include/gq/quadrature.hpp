#pragma once

#include <cmath>
#include <string>

#include "gq/types.hpp"

namespace gq {

/// Deterministic midpoint tensor grid on [-extent, extent]^2 with
/// `resolution` points per axis. Every cell integral in the library uses this
/// rule, so optimization results are bitwise reproducible for a given grid.
struct QuadratureGrid {
  Real extent;     // half-width, source units
  int resolution;  // points per axis

  QuadratureGrid(Real extent_, int resolution_)
      : extent(extent_), resolution(resolution_) {
    if (!(extent > 0) || !std::isfinite(extent))
      throw DomainError("QuadratureGrid: extent must be finite and > 0");
    if (resolution < 2)
      throw DomainError("QuadratureGrid: resolution must be >= 2");
  }

  Real step() const { return 2.0 * extent / resolution; }
  Real weight() const { return step() * step(); }
  Real coord(int i) const { return -extent + (i + 0.5) * step(); }

  /// Smallest extent leaving at most 1e-8 of the source mass outside.
  static Real min_extent(Real sigma2) {
    return std::sqrt(sigma2 * std::log(1e8));
  }

  /// Resolution floor so the expected cell holds a useful number of points.
  static int min_resolution(int n_centroids) {
    return 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<Real>(n_centroids))));
  }

  /// Throws GridTooCoarse when the grid cannot support integrals against a
  /// source of variance sigma2 partitioned into n_centroids cells.
  void require_covers(Real sigma2, int n_centroids) const {
    if (extent < min_extent(sigma2))
      throw GridTooCoarse("grid extent " + std::to_string(extent) +
                          " covers too little source mass; need >= " +
                          std::to_string(min_extent(sigma2)) +
                          " (raise --grid-extent)");
    if (resolution < min_resolution(n_centroids))
      throw GridTooCoarse("grid resolution " + std::to_string(resolution) +
                          " too coarse for N = " + std::to_string(n_centroids) +
                          "; need >= " + std::to_string(min_resolution(n_centroids)) +
                          " (raise --grid-m)");
  }

  /// Default grid: extent 4.5*sigma, 2048 points per axis (more for N beyond
  /// 2^8 so cells keep enough points).
  static QuadratureGrid defaults_for(int n_centroids, Real sigma2) {
    const int m = std::max(
        2048, 128 * static_cast<int>(std::ceil(std::sqrt(static_cast<Real>(n_centroids)))));
    return QuadratureGrid(4.5 * std::sqrt(sigma2), m);
  }
};

}  // namespace gq
