#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/quadrature.hpp"
#include "gq/scalar_quantizer.hpp"
#include "gq/types.hpp"

namespace gq {

enum class BaselineMode { Uniform, Optimal };

/// Split of the centroid budget between magnitude rings and phases.
struct PolarAllocation {
  int n_mag = 1;
  int n_phase = 1;
};

/// Cartesian product of two identical scalar quantizers on the per-dimension
/// Gaussian (variance sigma2/2). Optimal trains each axis by Lloyd; Uniform
/// uses equal-width levels with the width found by 1D scalar search.
/// N = n_per_dim^2.
Codebook build_rect(int n_per_dim, Real sigma2, BaselineMode mode);

/// Product polar quantizer: magnitude levels on the Rayleigh law (Lloyd for
/// Optimal, equal-probability rings for Uniform) crossed with uniform phases
/// at offset zero. Every divisor pair n_mag * n_phase = N is evaluated by
/// grid quadrature and the best allocation returned; allocations the grid
/// cannot resolve are skipped (N x 1 ring allocation always evaluates).
std::pair<Codebook, PolarAllocation> build_polar(int N, Real sigma2,
                                                 BaselineMode mode,
                                                 const QuadratureGrid& grid);

/// LBG/k-means on seeded pseudo-random source samples: splitting
/// initialization from the sample mean, empty clusters reseeded to the
/// farthest sample, deterministic for a given seed. When given,
/// distortion_trace records (codebook size, training MSE) per Lloyd pass;
/// descent holds within each fixed size.
Codebook train_lbg(int N, Real sigma2, std::int64_t num_samples,
                   std::uint64_t seed, Real tol = 1e-7, int max_iter = 100,
                   std::vector<std::pair<int, Real>>* distortion_trace = nullptr);

}  // namespace gq
