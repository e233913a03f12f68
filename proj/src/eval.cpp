#include "gq/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gq/cell_accum.hpp"
#include "gq/parallel.hpp"
#include "gq/quantize.hpp"
#include "gq/rng.hpp"

namespace gq {

namespace {

constexpr Real kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

}  // namespace

DistortionReport mc_distortion(const Codebook& cb, const SourceModel& src,
                               std::int64_t num_samples, std::uint64_t seed) {
  if (num_samples < 10000)
    throw DomainError("mc_distortion: need num_samples >= 1e4");
  const NearestCentroid nn(cb);
  const CounterRng rng{seed};

  // fixed sample blocks combined in order: bitwise reproducible for any
  // worker count
  const std::int64_t chunk = 65536;
  const int num_blocks = static_cast<int>((num_samples + chunk - 1) / chunk);
  std::vector<Real> block_sum(num_blocks, 0), block_sumsq(num_blocks, 0);
  detail::run_blocks(num_blocks, [&](int b) {
    const std::int64_t begin = b * chunk;
    const std::int64_t end = std::min(num_samples, begin + chunk);
    Real s = 0, s2 = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      const Complex z = rng.gaussian(static_cast<std::uint64_t>(i), src.sigma2);
      Real d2;
      nn.nearest(z.real(), z.imag(), &d2);
      s += d2;
      s2 += d2 * d2;
    }
    block_sum[b] = s;
    block_sumsq[b] = s2;
  });
  Real sum = 0, sumsq = 0;
  for (int b = 0; b < num_blocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }

  DistortionReport report;
  report.samples_used = num_samples;
  report.seed = seed;
  report.mse = sum / num_samples;
  report.mse_db = 10.0 * std::log10(report.mse / src.sigma2);
  report.rate_bits = cb.rate_bits();
  const Real var =
      (sumsq - num_samples * report.mse * report.mse) / (num_samples - 1);
  report.ci_halfwidth = kZ95 * std::sqrt(std::max(var, Real(0)) / num_samples);
  return report;
}

std::vector<CellStats> cell_statistics(const Codebook& cb,
                                       const SourceModel& src,
                                       const QuadratureGrid& grid) {
  grid.require_covers(src.sigma2, cb.size());
  const auto acc = detail::accumulate_cells(cb, src, grid, false);
  const Real w = grid.weight();
  std::vector<CellStats> cells(cb.size());
  for (int p = 0; p < cb.size(); ++p) {
    if (acc.counts[p] == 0)
      throw GridTooCoarse("cell_statistics: centroid " + std::to_string(p + 1) +
                          " captured no grid points (raise --grid-m)");
    CellStats& c = cells[p];
    c.index = p + 1;
    c.probability = acc.mass[p];
    c.conditional_mse = acc.err_f[p] / acc.mass[p];
    c.volume = acc.counts[p] * w;
    c.nmi = 0.5 * acc.err_u[p] / (c.volume * c.volume);
    c.clipped = acc.on_boundary[p] != 0;
  }
  return cells;
}

Real empirical_entropy(const Codebook& cb, const SourceModel& src,
                       std::int64_t num_samples, std::uint64_t seed) {
  if (num_samples < 100LL * cb.size())
    throw DomainError("empirical_entropy: need num_samples >= 100*N");
  const NearestCentroid nn(cb);
  const CounterRng rng{seed};

  const std::int64_t chunk = 65536;
  const int num_blocks = static_cast<int>((num_samples + chunk - 1) / chunk);
  std::vector<std::vector<std::int64_t>> block_counts(num_blocks);
  detail::run_blocks(num_blocks, [&](int b) {
    auto& counts = block_counts[b];
    counts.assign(cb.size(), 0);
    const std::int64_t begin = b * chunk;
    const std::int64_t end = std::min(num_samples, begin + chunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const Complex z = rng.gaussian(static_cast<std::uint64_t>(i), src.sigma2);
      ++counts[nn.nearest(z.real(), z.imag())];
    }
  });
  std::vector<std::int64_t> counts(cb.size(), 0);
  for (const auto& bc : block_counts)
    for (int p = 0; p < cb.size(); ++p) counts[p] += bc[p];

  Real h = 0;
  for (int p = 0; p < cb.size(); ++p) {
    if (counts[p] == 0) continue;
    const Real freq = static_cast<Real>(counts[p]) / num_samples;
    h -= freq * std::log2(freq);
  }
  return h;
}

Real papr(const Codebook& cb, std::span<const Real> weights) {
  if (cb.size() < 1) throw DomainError("papr: empty codebook");
  if (!weights.empty()) {
    if (static_cast<int>(weights.size()) != cb.size())
      throw DomainError("papr: weights length must equal N");
    Real total = 0;
    for (const Real w : weights) {
      if (!(w >= 0)) throw DomainError("papr: weights must be >= 0");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw DomainError("papr: weights must sum to 1");
  }
  Real peak = 0, avg = 0;
  for (int p = 0; p < cb.size(); ++p) {
    const Real pw = std::norm(cb.centroids[p]);
    peak = std::max(peak, pw);
    avg += (weights.empty() ? 1.0 / cb.size() : weights[p]) * pw;
  }
  if (peak == 0) throw ZeroPower("papr: all centroids at the origin");
  return 10.0 * std::log10(peak / avg);
}

std::vector<std::pair<Real, Real>> rd_reference(Real sigma2,
                                                std::span<const Real> rates) {
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError("rd_reference: sigma2 must be finite and > 0");
  std::vector<std::pair<Real, Real>> out;
  out.reserve(rates.size());
  for (const Real r : rates) {
    if (!(r >= 0) || !std::isfinite(r))
      throw DomainError("rd_reference: rates must be finite and >= 0");
    out.emplace_back(r, sigma2 * std::exp2(-r));
  }
  return out;
}

}  // namespace gq
