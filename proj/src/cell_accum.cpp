#include "gq/cell_accum.hpp"

#include <algorithm>
#include <cmath>

#include "gq/parallel.hpp"
#include "gq/quantize.hpp"

namespace gq {
namespace detail {

CellAccumulators accumulate_cells(const Codebook& cb, const SourceModel& src,
                                  const QuadratureGrid& grid,
                                  bool with_projection) {
  const int n = cb.size();
  const int m = grid.resolution;
  const Real w = grid.weight();
  const Real inv_pi_s2 = 1.0 / (kPi * src.sigma2);
  const NearestCentroid nn(cb);

  ArrayXr cx(n), cy(n), cos_a(n), sin_a(n);
  for (int p = 0; p < n; ++p) {
    cx[p] = cb.centroids[p].real();
    cy[p] = cb.centroids[p].imag();
    if (with_projection) {
      const Real a = spiral_angle(p + 1);
      cos_a[p] = std::cos(a);
      sin_a[p] = std::sin(a);
    }
  }

  // axis coordinates and the separable exp(-x^2/sigma2) factor, shared by rows
  ArrayXr xs(m), ex(m);
  for (int i = 0; i < m; ++i) {
    xs[i] = grid.coord(i);
    ex[i] = std::exp(-xs[i] * xs[i] / src.sigma2);
  }

  struct Block {
    Eigen::ArrayXi counts;
    ArrayXr mass, proj, err_f, err_u;
    std::vector<char> on_boundary;
  };
  const int num_blocks = std::min(m, 64);
  std::vector<Block> blocks(num_blocks);
  const int rows_per_block = (m + num_blocks - 1) / num_blocks;

  detail::run_blocks(num_blocks, [&](int b) {
    Block& blk = blocks[b];
    blk.counts = Eigen::ArrayXi::Zero(n);
    blk.mass = ArrayXr::Zero(n);
    blk.proj = ArrayXr::Zero(n);
    blk.err_f = ArrayXr::Zero(n);
    blk.err_u = ArrayXr::Zero(n);
    blk.on_boundary.assign(n, 0);
    const int j0 = b * rows_per_block;
    const int j1 = std::min(m, j0 + rows_per_block);
    for (int j = j0; j < j1; ++j) {
      const Real y = grid.coord(j);
      const Real ey = std::exp(-y * y / src.sigma2) * inv_pi_s2;
      const bool boundary_row = (j == 0 || j == m - 1);
      for (int i = 0; i < m; ++i) {
        const Real x = xs[i];
        Real d2;
        const int p = nn.nearest(x, y, &d2);
        const Real f = ex[i] * ey;
        const Real wf = w * f;
        blk.counts[p] += 1;
        blk.mass[p] += wf;
        blk.err_f[p] += wf * d2;
        blk.err_u[p] += w * d2;
        if (with_projection) blk.proj[p] += wf * (x * cos_a[p] + y * sin_a[p]);
        if (boundary_row || i == 0 || i == m - 1) blk.on_boundary[p] = 1;
      }
    }
  });

  CellAccumulators acc;
  acc.counts = Eigen::ArrayXi::Zero(n);
  acc.mass = ArrayXr::Zero(n);
  acc.proj = ArrayXr::Zero(n);
  acc.err_f = ArrayXr::Zero(n);
  acc.err_u = ArrayXr::Zero(n);
  acc.on_boundary.assign(n, 0);
  for (const Block& blk : blocks) {
    acc.counts += blk.counts;
    acc.mass += blk.mass;
    acc.proj += blk.proj;
    acc.err_f += blk.err_f;
    acc.err_u += blk.err_u;
    for (int p = 0; p < n; ++p)
      if (blk.on_boundary[p]) acc.on_boundary[p] = 1;
  }
  acc.objective = acc.err_f.sum();
  return acc;
}

}  // namespace detail
}  // namespace gq
