#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/quadrature.hpp"
#include "gq/source_model.hpp"
#include "gq/types.hpp"

namespace gq {

/// Per-Voronoi-cell statistics on the quadrature grid. volume is the grid
/// measure of the cell clipped to the evaluation extent; cells touching the
/// outermost grid ring are flagged clipped so shape statistics can exclude
/// them. nmi is the normalized moment of inertia about the codebook point,
/// (1/2) * integral |p - c|^2 dp / V^2 (1/12 for a centered square).
struct CellStats {
  int index = 0;  // spiral index, 1-based
  Real probability = 0;
  Real conditional_mse = 0;
  Real volume = 0;
  Real nmi = 0;
  bool clipped = false;
};

struct DistortionReport {
  Real mse = 0;
  Real mse_db = 0;  // 10*log10(mse / sigma2)
  Real rate_bits = 0;
  std::int64_t samples_used = 0;
  Real ci_halfwidth = 0;  // 95% confidence on mse
  std::uint64_t seed = 0;
  std::optional<std::vector<CellStats>> per_cell;
};

/// Seeded Monte Carlo MSE with a 95% confidence half-width. Deterministic
/// given the seed regardless of worker count. Requires num_samples >= 1e4.
DistortionReport mc_distortion(const Codebook& cb, const SourceModel& src,
                               std::int64_t num_samples, std::uint64_t seed);

/// Per-cell probability mass, conditional MSE, grid area, and normalized
/// moment of inertia. Throws GridTooCoarse when a cell captures no points.
std::vector<CellStats> cell_statistics(const Codebook& cb,
                                       const SourceModel& src,
                                       const QuadratureGrid& grid);

/// Empirical index entropy in bits over seeded samples (0*log 0 := 0).
/// Requires num_samples >= 100*N.
Real empirical_entropy(const Codebook& cb, const SourceModel& src,
                       std::int64_t num_samples, std::uint64_t seed);

/// Peak-to-average power ratio of the centroid set in dB:
/// 10*log10(max |c|^2 / sum w_n |c_n|^2). Uniform weights by default; a
/// probability weighting (summing to 1) may be supplied. Throws ZeroPower
/// when every centroid sits at the origin.
Real papr(const Codebook& cb, std::span<const Real> weights = {});

/// Rate-distortion reference points D = sigma2 * 2^-R.
std::vector<std::pair<Real, Real>> rd_reference(Real sigma2,
                                                std::span<const Real> rates);

}  // namespace gq
