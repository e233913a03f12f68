#pragma once

#include <utility>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/quadrature.hpp"
#include "gq/source_model.hpp"
#include "gq/types.hpp"

namespace gq {

enum class LmInit { HighRate, Uniform };

/// State of the constrained Lloyd-Max iteration: only the radii move, the
/// phases stay pinned to the golden-angle law.
struct LloydMaxState {
  ArrayXr radii;
  int iteration = 0;
  std::vector<Real> distortion_trace;     // starts at the initial distortion
  std::vector<Real> radius_change_trace;  // max |r' - r| per completed update
  bool converged = false;
  bool monotone_constraint = false;
};

/// MSE of the codebook against the source, integrated by grid quadrature over
/// the Voronoi partition. Deterministic for a fixed grid. Throws
/// GridTooCoarse when the grid violates the coverage invariants or any cell
/// captures zero grid points.
Real lm_objective(const Codebook& cb, const SourceModel& src,
                  const QuadratureGrid& grid);

/// One constrained Lloyd step. Assigns Voronoi cells for the current radii,
/// replaces each radius by the cell's conditional-mean projection onto its
/// fixed ray (clamped at zero; pool-adjacent-violators projection onto the
/// nondecreasing cone when monotone_constraint is set), increments the
/// iteration, and appends the updated objective to the trace (seeding the
/// trace with the pre-update objective when empty). Throws EmptyCell with the
/// starved spiral index when a centroid captures no grid mass.
LloydMaxState lm_update(const LloydMaxState& state, const SourceModel& src,
                        const QuadratureGrid& grid);

/// Runs lm_update until the relative distortion drop falls below tol or
/// max_iter is reached. Returns the optimized codebook (scheme LloydMaxGQ,
/// metadata: iterations, final_distortion, converged) and the final state.
std::pair<Codebook, LloydMaxState> optimize_lloydmax(
    int N, Real sigma2, LmInit init, bool monotone, Real tol, int max_iter,
    const QuadratureGrid& grid);

/// Radii splitting the source mass into N equal rings (Uniform init).
ArrayXr equal_mass_radii(int N, Real sigma2);

/// Weighted least-squares projection onto the nondecreasing cone
/// (pool-adjacent-violators).
ArrayXr pav_nondecreasing(const ArrayXr& values, const ArrayXr& weights);

}  // namespace gq
