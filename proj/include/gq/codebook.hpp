#pragma once

#include <cmath>

#include "gq/types.hpp"

namespace gq {

/// Fraction of a turn between consecutive spiral points: (3 - sqrt(5)) / 2.
Real golden_fraction();

/// The golden angle in radians: 2*pi*(3 - sqrt(5))/2, about 137.508 degrees.
Real golden_angle();

/// Phase of spiral index n (1-based), reduced to [0, 2*pi). Construction and
/// validation both go through this reduction so they agree to the last bit.
Real spiral_angle(int n);

/// Ordered set of complex centroids. Centroid n (n = 1..N, the spiral index)
/// is stored at array position n-1. Immutable after construction by
/// convention; safe to read from concurrent workers.
struct Codebook {
  Scheme scheme = Scheme::HighRateGQ;
  Real sigma2 = 1.0;  // total source variance the design targets
  ArrayXc centroids;
  Metadata metadata;

  int size() const { return static_cast<int>(centroids.size()); }
  Complex centroid(int n) const { return centroids[n - 1]; }
  Real rate_bits() const { return std::log2(static_cast<Real>(size())); }
};

/// Places centroids on the golden-angle spiral: centroid n = radii[n-1] *
/// exp(i * 2*pi*phi*n). Throws NonFiniteRadius on NaN/Inf radii and
/// DomainError on empty input or negative radii.
Codebook spiral_centroids(const ArrayXr& radii, Scheme scheme, Real sigma2,
                          Metadata metadata = {});

/// Checks the codebook data-model invariants (N >= 1, finite centroids,
/// sigma2 > 0, and for GQ schemes the golden-angle phase law within 1e-12).
/// Throws FormatError naming the offending field.
void validate(const Codebook& cb);

}  // namespace gq
