#include "gq/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gq/lloydmax.hpp"
#include "gq/parallel.hpp"
#include "gq/quantize.hpp"
#include "gq/rng.hpp"
#include "gq/source_model.hpp"

namespace gq {

namespace {

// MSE of equal-width levels centered on zero with spacing delta
Real uniform_scalar_mse(const ScalarDensity& density, int n, Real delta) {
  ScalarQuantizer q;
  q.levels.resize(n);
  for (int i = 0; i < n; ++i)
    q.levels[i] = (i + 1 - 0.5 * (n + 1)) * delta;
  q.boundaries.resize(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i)
    q.boundaries[i] = 0.5 * (q.levels[i] + q.levels[i + 1]);
  return scalar_mse(q, density);
}

// golden-section search for the width minimizing the uniform quantizer MSE
ScalarQuantizer uniform_scalar(const ScalarDensity& density, int n) {
  ScalarQuantizer q;
  if (n == 1) {
    q.levels = ArrayXr::Zero(1);
    q.boundaries.resize(0);
    q.mse = scalar_mse(q, density);
    q.converged = true;
    return q;
  }
  const Real sd = std::sqrt(density.param);
  Real lo = 1e-9 * sd, hi = 10.0 * sd;
  const Real gr = (std::sqrt(5.0) - 1.0) / 2.0;
  Real x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  Real f1 = uniform_scalar_mse(density, n, x1);
  Real f2 = uniform_scalar_mse(density, n, x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = uniform_scalar_mse(density, n, x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = uniform_scalar_mse(density, n, x2);
    }
  }
  const Real delta = 0.5 * (lo + hi);
  q.levels.resize(n);
  for (int i = 0; i < n; ++i)
    q.levels[i] = (i + 1 - 0.5 * (n + 1)) * delta;
  q.boundaries.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i)
    q.boundaries[i] = 0.5 * (q.levels[i] + q.levels[i + 1]);
  q.mse = scalar_mse(q, density);
  q.converged = true;
  return q;
}

// equal-probability rings with conditional-mean representatives
ScalarQuantizer equal_probability_rings(const ScalarDensity& density, int n) {
  ScalarQuantizer q;
  q.levels.resize(n);
  q.boundaries.resize(std::max(n - 1, 0));
  Real lo = 0.0;
  for (int i = 0; i < n; ++i) {
    const Real hi = i == n - 1
                        ? std::numeric_limits<Real>::infinity()
                        : density.quantile(static_cast<Real>(i + 1) / n);
    q.levels[i] = density.first_moment(lo, hi) / density.mass(lo, hi);
    if (i + 1 < n) q.boundaries[i] = hi;
    lo = hi;
  }
  q.mse = scalar_mse(q, density);
  q.converged = true;
  return q;
}

}  // namespace

Codebook build_rect(int n_per_dim, Real sigma2, BaselineMode mode) {
  if (n_per_dim < 1) throw InvalidN("build_rect: n_per_dim must be >= 1");
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError("build_rect: sigma2 must be finite and > 0");
  const ScalarDensity axis = ScalarDensity::gaussian(sigma2 / 2);
  const ScalarQuantizer sq = mode == BaselineMode::Optimal
                                 ? lloyd_scalar(axis, n_per_dim)
                                 : uniform_scalar(axis, n_per_dim);
  Codebook cb;
  cb.scheme = Scheme::RectProduct;
  cb.sigma2 = sigma2;
  cb.centroids.resize(n_per_dim * n_per_dim);
  for (int i = 0; i < n_per_dim; ++i)
    for (int j = 0; j < n_per_dim; ++j)
      cb.centroids[i * n_per_dim + j] = Complex(sq.levels[j], sq.levels[i]);
  cb.metadata["n_per_dim"] = static_cast<std::int64_t>(n_per_dim);
  cb.metadata["mode"] =
      std::string(mode == BaselineMode::Optimal ? "optimal" : "uniform");
  cb.metadata["scalar_mse_per_dim"] = sq.mse;
  return cb;
}

std::pair<Codebook, PolarAllocation> build_polar(int N, Real sigma2,
                                                 BaselineMode mode,
                                                 const QuadratureGrid& grid) {
  if (N < 1) throw InvalidN("build_polar: N must be >= 1");
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError("build_polar: sigma2 must be finite and > 0");
  const SourceModel src(sigma2);
  const ScalarDensity mag_density = ScalarDensity::rayleigh(sigma2);

  auto assemble = [&](int n_mag, int n_phase) {
    const ScalarQuantizer rings =
        mode == BaselineMode::Optimal
            ? lloyd_scalar(mag_density, n_mag)
            : equal_probability_rings(mag_density, n_mag);
    Codebook cb;
    cb.scheme = Scheme::PolarProduct;
    cb.sigma2 = sigma2;
    cb.centroids.resize(n_mag * n_phase);
    for (int i = 0; i < n_mag; ++i)
      for (int j = 0; j < n_phase; ++j) {
        const Real phase = 2.0 * kPi * j / n_phase;
        cb.centroids[i * n_phase + j] =
            Complex(rings.levels[i] * std::cos(phase),
                    rings.levels[i] * std::sin(phase));
      }
    return cb;
  };

  Codebook best;
  PolarAllocation best_alloc;
  Real best_mse = std::numeric_limits<Real>::infinity();
  bool any = false;
  for (int d = 1; d <= N; ++d) {
    if (N % d != 0) continue;
    Codebook cand = assemble(d, N / d);
    Real mse;
    try {
      mse = lm_objective(cand, src, grid);
    } catch (const GridTooCoarse&) {
      continue;  // allocation unresolvable on this grid
    }
    if (mse < best_mse) {
      best_mse = mse;
      best = std::move(cand);
      best_alloc = {d, N / d};
      any = true;
    }
  }
  if (!any)
    throw GridTooCoarse("build_polar: no allocation evaluable on this grid");
  best.metadata["n_mag"] = static_cast<std::int64_t>(best_alloc.n_mag);
  best.metadata["n_phase"] = static_cast<std::int64_t>(best_alloc.n_phase);
  best.metadata["mode"] =
      std::string(mode == BaselineMode::Optimal ? "optimal" : "uniform");
  best.metadata["grid_mse"] = best_mse;
  return {std::move(best), best_alloc};
}

Codebook train_lbg(int N, Real sigma2, std::int64_t num_samples,
                   std::uint64_t seed, Real tol, int max_iter,
                   std::vector<std::pair<int, Real>>* distortion_trace) {
  if (N < 1) throw InvalidN("train_lbg: N must be >= 1");
  if (num_samples < 100LL * N)
    throw DomainError("train_lbg: need num_samples >= 100*N");
  const CounterRng rng{seed};

  std::vector<Real> sx(num_samples), sy(num_samples);
  {
    const std::int64_t chunk = 65536;
    const int blocks = static_cast<int>((num_samples + chunk - 1) / chunk);
    detail::run_blocks(blocks, [&](int b) {
      const std::int64_t begin = b * chunk;
      const std::int64_t end = std::min(num_samples, begin + chunk);
      for (std::int64_t i = begin; i < end; ++i) {
        const Complex z = rng.gaussian(static_cast<std::uint64_t>(i), sigma2);
        sx[i] = z.real();
        sy[i] = z.imag();
      }
    });
  }

  Real mean_x = 0, mean_y = 0;
  for (std::int64_t i = 0; i < num_samples; ++i) {
    mean_x += sx[i];
    mean_y += sy[i];
  }
  mean_x /= num_samples;
  mean_y /= num_samples;

  std::vector<Real> cx{mean_x}, cy{mean_y};
  std::vector<int> idx(num_samples);
  std::vector<Real> d2(num_samples);
  std::vector<Real> cluster_err;
  const Real eps = 0.01 * std::sqrt(sigma2);
  int total_iterations = 0;
  int split_counter = 0;
  Real last_dist = 0;

  auto assign = [&](const Codebook& cb) {
    const NearestCentroid nn(cb);
    const std::int64_t chunk = 65536;
    const int blocks = static_cast<int>((num_samples + chunk - 1) / chunk);
    detail::run_blocks(blocks, [&](int b) {
      const std::int64_t begin = b * chunk;
      const std::int64_t end = std::min(num_samples, begin + chunk);
      for (std::int64_t i = begin; i < end; ++i)
        idx[i] = nn.nearest(sx[i], sy[i], &d2[i]);
    });
  };

  auto as_codebook = [&]() {
    Codebook cb;
    cb.scheme = Scheme::LBG;
    cb.sigma2 = sigma2;
    cb.centroids.resize(static_cast<int>(cx.size()));
    for (std::size_t p = 0; p < cx.size(); ++p)
      cb.centroids[static_cast<int>(p)] = Complex(cx[p], cy[p]);
    return cb;
  };

  while (true) {
    const int k = static_cast<int>(cx.size());

    // Lloyd passes at the current codebook size
    Real prev = std::numeric_limits<Real>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      assign(as_codebook());
      Real dist = 0;
      std::vector<Real> sum_x(k, 0), sum_y(k, 0), err(k, 0);
      std::vector<std::int64_t> count(k, 0);
      for (std::int64_t i = 0; i < num_samples; ++i) {
        sum_x[idx[i]] += sx[i];
        sum_y[idx[i]] += sy[i];
        err[idx[i]] += d2[i];
        ++count[idx[i]];
        dist += d2[i];
      }
      dist /= num_samples;
      if (distortion_trace) distortion_trace->emplace_back(k, dist);
      last_dist = dist;
      ++total_iterations;
      cluster_err = err;
      const bool done = (prev - dist) / std::max(prev, Real(1e-300)) < tol;
      for (int p = 0; p < k; ++p) {
        if (count[p] > 0) {
          cx[p] = sum_x[p] / count[p];
          cy[p] = sum_y[p] / count[p];
        }
      }
      // reseed empty clusters to the currently farthest samples
      std::vector<int> empties;
      for (int p = 0; p < k; ++p)
        if (count[p] == 0) empties.push_back(p);
      if (!empties.empty()) {
        std::vector<std::int64_t> order(num_samples);
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(),
                          order.begin() + static_cast<std::int64_t>(empties.size()),
                          order.end(), [&](std::int64_t a, std::int64_t b) {
                            return d2[a] > d2[b] || (d2[a] == d2[b] && a < b);
                          });
        for (std::size_t e = 0; e < empties.size(); ++e) {
          cx[empties[e]] = sx[order[e]];
          cy[empties[e]] = sy[order[e]];
        }
        prev = dist;
        continue;  // do not stop on an iteration that had to reseed
      }
      if (done) break;
      prev = dist;
    }

    if (k >= N) break;

    // split the highest-distortion centroids, golden-angle perturbation
    const int n_split = std::min(k, N - k);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return cluster_err[a] > cluster_err[b];
    });
    for (int s = 0; s < n_split; ++s) {
      const int p = order[s];
      const Real a = spiral_angle(++split_counter);
      const Real dx = eps * std::cos(a), dy = eps * std::sin(a);
      cx.push_back(cx[p] - dx);
      cy.push_back(cy[p] - dy);
      cx[p] += dx;
      cy[p] += dy;
    }
  }

  Codebook cb = as_codebook();
  cb.metadata["seed"] = static_cast<std::int64_t>(seed);
  cb.metadata["num_samples"] = num_samples;
  cb.metadata["iterations"] = static_cast<std::int64_t>(total_iterations);
  cb.metadata["final_train_mse"] = last_dist;
  return cb;
}

}  // namespace gq
