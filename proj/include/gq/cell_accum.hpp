#pragma once

#include <vector>

#include "gq/codebook.hpp"
#include "gq/quadrature.hpp"
#include "gq/source_model.hpp"
#include "gq/types.hpp"

namespace gq {
namespace detail {

/// Per-cell integrals of one assignment sweep over the quadrature grid.
/// Accumulation runs over fixed row blocks combined in index order, so every
/// field is bitwise independent of the worker count.
struct CellAccumulators {
  Eigen::ArrayXi counts;  // grid points captured per cell
  ArrayXr mass;           // sum of w * f            (cell probability)
  ArrayXr proj;           // sum of w * f * (x cos a_n + y sin a_n)
  ArrayXr err_f;          // sum of w * f * |p - c_n|^2
  ArrayXr err_u;          // sum of w     * |p - c_n|^2
  std::vector<char> on_boundary;  // cell touches the outermost grid ring
  Real objective = 0;             // total of err_f
};

/// Assigns every grid point to its nearest centroid and accumulates the cell
/// integrals. with_projection additionally accumulates the golden-angle
/// radial projection integrand (GQ schemes only).
CellAccumulators accumulate_cells(const Codebook& cb, const SourceModel& src,
                                  const QuadratureGrid& grid,
                                  bool with_projection);

}  // namespace detail
}  // namespace gq
