#pragma once

// Test-only oracles, deliberately independent of the library's computation
// paths: exhaustive scans, direct searches, and quadrature built from
// scratch.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gq/codebook.hpp"
#include "gq/types.hpp"

namespace oracle {

// exhaustive linear scan with smallest-index tie-breaking (1-based)
inline int brute_force_quantize(const gq::Codebook& cb, gq::Complex point) {
  int best = 0;
  gq::Real best_d2 = std::numeric_limits<gq::Real>::infinity();
  for (int p = 0; p < cb.size(); ++p) {
    const gq::Real dx = point.real() - cb.centroids[p].real();
    const gq::Real dy = point.imag() - cb.centroids[p].imag();
    const gq::Real d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = p;
    }
  }
  return best + 1;
}

// derivative-free compass search minimizing fn over k coordinates
template <class Fn>
std::vector<gq::Real> compass_minimize(std::vector<gq::Real> x, Fn&& fn,
                                       gq::Real initial_step,
                                       gq::Real final_step) {
  gq::Real fx = fn(x);
  gq::Real step = initial_step;
  while (step > final_step) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (const gq::Real sign : {+1.0, -1.0}) {
        std::vector<gq::Real> cand = x;
        cand[i] += sign * step;
        const gq::Real fc = fn(cand);
        if (fc < fx) {
          x = cand;
          fx = fc;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

// Optimal scalar quantizer by dynamic programming over a discretized
// support. Moments come from Simpson quadrature of the density callable, so
// nothing is shared with the library's closed forms.
template <class Density>
gq::Real dp_scalar_quantizer_mse(Density&& density, gq::Real lo, gq::Real hi,
                                 int levels, int boundary_grid = 800,
                                 int simpson_points = 24001) {
  using gq::Real;
  // prefix integrals of (1, x, x^2) * f on a fine Simpson grid
  const int m = simpson_points | 1;  // odd
  const Real h = (hi - lo) / (m - 1);
  std::vector<Real> p0(m, 0), p1(m, 0), p2(m, 0);
  auto weight = [&](int i) {
    if (i == 0 || i == m - 1) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };
  // cumulative Simpson over pairs of intervals
  for (int i = 2; i < m; i += 2) {
    const Real x0 = lo + (i - 2) * h, x1 = lo + (i - 1) * h, x2 = lo + i * h;
    const Real f0 = density(x0), f1 = density(x1), f2 = density(x2);
    p0[i] = p0[i - 2] + h / 3 * (f0 + 4 * f1 + f2);
    p1[i] = p1[i - 2] + h / 3 * (x0 * f0 + 4 * x1 * f1 + x2 * f2);
    p2[i] = p2[i - 2] + h / 3 * (x0 * x0 * f0 + 4 * x1 * x1 * f1 + x2 * x2 * f2);
    p0[i - 1] = 0.5 * (p0[i] + p0[i - 2]);  // midpoint filler, unused by DP
    p1[i - 1] = 0.5 * (p1[i] + p1[i - 2]);
    p2[i - 1] = 0.5 * (p2[i] + p2[i - 2]);
  }
  (void)weight;

  // candidate boundaries on even Simpson nodes
  const int g = boundary_grid;
  std::vector<int> node(g + 1);
  for (int t = 0; t <= g; ++t) {
    int i = static_cast<int>(std::llround(static_cast<Real>(t) * (m - 1) / g));
    node[t] = (i / 2) * 2;  // snap to even node
  }
  auto cell_cost = [&](int a, int b) {  // optimal-level cost of [node a, node b]
    const Real mass = p0[node[b]] - p0[node[a]];
    const Real m1 = p1[node[b]] - p1[node[a]];
    const Real m2 = p2[node[b]] - p2[node[a]];
    if (mass <= 0) return Real(0);
    return m2 - m1 * m1 / mass;
  };

  const Real inf = std::numeric_limits<Real>::infinity();
  std::vector<Real> prev(g + 1, inf), cur(g + 1, inf);
  for (int t = 0; t <= g; ++t) prev[t] = cell_cost(0, t);
  for (int level = 2; level <= levels; ++level) {
    std::fill(cur.begin(), cur.end(), inf);
    for (int t = level; t <= g; ++t)
      for (int s = level - 1; s < t; ++s)
        cur[t] = std::min(cur[t], prev[s] + cell_cost(s, t));
    std::swap(prev, cur);
  }
  return prev[g];
}

}  // namespace oracle
