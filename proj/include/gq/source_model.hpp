#pragma once

#include <cmath>

#include "gq/types.hpp"

namespace gq {

/// Circularly-symmetric complex Gaussian source with total variance sigma2
/// (sigma2/2 per real dimension). Immutable and safe to share across workers.
struct SourceModel {
  Real sigma2 = 1.0;

  explicit SourceModel(Real s2) : sigma2(s2) {
    if (!(s2 > 0) || !std::isfinite(s2))
      throw DomainError("SourceModel: sigma2 must be finite and > 0");
  }

  Real pdf(Real x, Real y) const {
    return std::exp(-(x * x + y * y) / sigma2) / (kPi * sigma2);
  }
  Real pdf(Complex z) const { return pdf(z.real(), z.imag()); }

  /// Density of the magnitude: f(r) = (2 r / sigma2) exp(-r^2 / sigma2).
  Real radial_pdf(Real r) const {
    return 2.0 * r * std::exp(-r * r / sigma2) / sigma2;
  }

  /// P(|Z| <= r) = 1 - exp(-r^2 / sigma2).
  Real mass_within(Real r) const { return -std::expm1(-r * r / sigma2); }

  Real sigma() const { return std::sqrt(sigma2); }
};

}  // namespace gq
