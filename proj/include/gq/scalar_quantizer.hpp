#pragma once

#include "gq/types.hpp"

namespace gq {

/// 1D density with closed-form partial moments over an interval [a, b]:
/// mass, first and second moment. GaussianPerDim is N(0, var) for one real
/// dimension; Rayleigh is the magnitude law of the complex source with total
/// variance sigma2, f(r) = (2 r / sigma2) exp(-r^2 / sigma2) on r >= 0.
struct ScalarDensity {
  enum class Kind { GaussianPerDim, Rayleigh };

  Kind kind = Kind::GaussianPerDim;
  Real param = 1.0;  // variance (Gaussian) or sigma2 (Rayleigh)

  static ScalarDensity gaussian(Real var) {
    return {Kind::GaussianPerDim, var};
  }
  static ScalarDensity rayleigh(Real sigma2) { return {Kind::Rayleigh, sigma2}; }

  Real support_lo() const;  // -inf for Gaussian, 0 for Rayleigh
  Real mass(Real a, Real b) const;
  Real first_moment(Real a, Real b) const;
  Real second_moment(Real a, Real b) const;
  Real mean() const;
  Real quantile(Real p) const;
};

/// Scalar quantizer: sorted levels with the interleaving cell boundaries
/// (boundaries[i] separates level i from level i+1).
struct ScalarQuantizer {
  ArrayXr levels;
  ArrayXr boundaries;
  Real mse = 0;
  int iterations = 0;
  bool converged = false;
};

/// Classic 1D Lloyd iteration: boundaries at level midpoints, levels at cell
/// conditional means from the closed-form moments. Stops when the largest
/// level movement falls below tol * sqrt(param); if max_iter is hit first the
/// best iterate is returned with converged = false.
ScalarQuantizer lloyd_scalar(const ScalarDensity& density, int N,
                             Real tol = 1e-12, int max_iter = 2000);

/// MSE of a scalar quantizer against the density (closed form).
Real scalar_mse(const ScalarQuantizer& q, const ScalarDensity& density);

}  // namespace gq
