#include "gq/lloydmax.hpp"

#include <cmath>
#include <string>

#include "gq/cell_accum.hpp"
#include "gq/highrate.hpp"

namespace gq {

namespace {

Codebook codebook_of(const ArrayXr& radii, Real sigma2) {
  return spiral_centroids(radii, Scheme::LloydMaxGQ, sigma2);
}

}  // namespace

Real lm_objective(const Codebook& cb, const SourceModel& src,
                  const QuadratureGrid& grid) {
  grid.require_covers(src.sigma2, cb.size());
  const auto acc = detail::accumulate_cells(cb, src, grid, false);
  for (int p = 0; p < cb.size(); ++p)
    if (acc.counts[p] == 0)
      throw GridTooCoarse("lm_objective: centroid " + std::to_string(p + 1) +
                          " captured no grid points (raise --grid-m or "
                          "--grid-extent)");
  return acc.objective;
}

LloydMaxState lm_update(const LloydMaxState& state, const SourceModel& src,
                        const QuadratureGrid& grid) {
  const int n = static_cast<int>(state.radii.size());
  if (n < 1) throw DomainError("lm_update: empty state");
  grid.require_covers(src.sigma2, n);

  const Codebook current = codebook_of(state.radii, src.sigma2);
  const auto acc = detail::accumulate_cells(current, src, grid, true);
  for (int p = 0; p < n; ++p)
    if (acc.counts[p] == 0 || !(acc.mass[p] > 0))
      throw EmptyCell("lm_update: centroid " + std::to_string(p + 1) +
                      " captured no grid mass; raise --grid-m or shrink the "
                      "initial radii");

  // projected conditional mean; the ray constraint makes negative values
  // infeasible, and the quadratic cell cost clamps them to zero
  ArrayXr next = (acc.proj / acc.mass).max(Real(0));
  if (state.monotone_constraint)
    next = pav_nondecreasing(next, acc.mass).max(Real(0));

  LloydMaxState out = state;
  out.radii = next;
  out.iteration = state.iteration + 1;
  if (out.distortion_trace.empty())
    out.distortion_trace.push_back(acc.objective);
  out.radius_change_trace.push_back((next - state.radii).abs().maxCoeff());
  const auto post = detail::accumulate_cells(codebook_of(next, src.sigma2),
                                             src, grid, false);
  out.distortion_trace.push_back(post.objective);
  return out;
}

std::pair<Codebook, LloydMaxState> optimize_lloydmax(
    int N, Real sigma2, LmInit init, bool monotone, Real tol, int max_iter,
    const QuadratureGrid& grid) {
  if (N < 1) throw DomainError("optimize_lloydmax: N must be >= 1");
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError("optimize_lloydmax: sigma2 must be finite and > 0");
  if (!(tol >= 0)) throw DomainError("optimize_lloydmax: tol must be >= 0");
  const SourceModel src(sigma2);
  grid.require_covers(sigma2, N);

  LloydMaxState state;
  state.radii = init == LmInit::HighRate
                    ? highrate_radii(N, sigma2, RadiusConvention::Midpoint)
                    : equal_mass_radii(N, sigma2);
  state.monotone_constraint = monotone;

  while (state.iteration < max_iter) {
    state = lm_update(state, src, grid);
    const auto& trace = state.distortion_trace;
    const Real prev = trace[trace.size() - 2];
    const Real cur = trace.back();
    if ((prev - cur) / prev < tol) {
      state.converged = true;
      break;
    }
  }

  Metadata meta;
  meta["iterations"] = static_cast<std::int64_t>(state.iteration);
  meta["converged"] = state.converged;
  meta["final_distortion"] = state.distortion_trace.empty()
                                 ? lm_objective(codebook_of(state.radii, sigma2),
                                                src, grid)
                                 : state.distortion_trace.back();
  meta["init"] = std::string(init == LmInit::HighRate ? "highrate" : "uniform");
  meta["monotone"] = monotone;
  meta["tol"] = tol;
  meta["max_iter"] = static_cast<std::int64_t>(max_iter);
  meta["grid_m"] = static_cast<std::int64_t>(grid.resolution);
  meta["grid_extent"] = grid.extent;
  Codebook cb = spiral_centroids(state.radii, Scheme::LloydMaxGQ, sigma2,
                                 std::move(meta));
  return {std::move(cb), std::move(state)};
}

ArrayXr equal_mass_radii(int N, Real sigma2) {
  if (N < 1) throw DomainError("equal_mass_radii: N must be >= 1");
  ArrayXr radii(N);
  for (int n = 1; n <= N; ++n) {
    const Real q = (n - 0.5) / N;  // ring midpoint in source mass
    radii[n - 1] = std::sqrt(-sigma2 * std::log1p(-q));
  }
  return radii;
}

ArrayXr pav_nondecreasing(const ArrayXr& values, const ArrayXr& weights) {
  const int n = static_cast<int>(values.size());
  if (weights.size() != n)
    throw DomainError("pav_nondecreasing: size mismatch");
  // stack of merged blocks: (weighted mean, total weight, count)
  std::vector<Real> mean(n), weight(n);
  std::vector<int> count(n);
  int top = 0;
  for (int i = 0; i < n; ++i) {
    mean[top] = values[i];
    weight[top] = weights[i];
    count[top] = 1;
    while (top > 0 && mean[top - 1] > mean[top]) {
      const Real w = weight[top - 1] + weight[top];
      mean[top - 1] = (mean[top - 1] * weight[top - 1] +
                       mean[top] * weight[top]) / w;
      weight[top - 1] = w;
      count[top - 1] += count[top];
      --top;
    }
    ++top;
  }
  ArrayXr out(n);
  int pos = 0;
  for (int b = 0; b < top; ++b)
    for (int k = 0; k < count[b]; ++k) out[pos++] = mean[b];
  return out;
}

}  // namespace gq
