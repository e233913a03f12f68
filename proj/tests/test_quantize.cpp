#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "gq/highrate.hpp"
#include "gq/quantize.hpp"
#include "gq/rng.hpp"
#include "oracles.hpp"

using namespace gq;

TEST_CASE("quantize returns the centroid's own index") {
  const Codebook cb = build_highrate(256, 1.0);
  for (int n = 1; n <= cb.size(); n += 17)
    CHECK(quantize(cb, cb.centroid(n)) == n);
}

TEST_CASE("N = 1 always maps to index 1") {
  ArrayXr radii(1);
  radii << 1.5;
  const Codebook cb = spiral_centroids(radii, Scheme::HighRateGQ, 1.0);
  CHECK(quantize(cb, Complex(10, -3)) == 1);
  CHECK(quantize(cb, Complex(0, 0)) == 1);
}

TEST_CASE("accelerated search equals the brute-force scan") {
  const CounterRng rng{2024};
  for (const int n : {1, 2, 7, 64, 256}) {
    const Codebook cb = build_highrate(n, 1.0);
    const NearestCentroid nn(cb);
    for (int i = 0; i < 10000 / (n == 1 ? 10 : 1); ++i) {
      Complex z = rng.gaussian(i, 1.0);
      if (i % 11 == 0) z *= 4.0;  // exercise far-outside queries
      const int got = nn.nearest(z.real(), z.imag()) + 1;
      CHECK(got == oracle::brute_force_quantize(cb, z));
    }
  }
}

TEST_CASE("batch equals per-point and handles the empty batch") {
  const Codebook cb = build_highrate(64, 1.0);
  CHECK(quantize_batch(cb, {}).empty());

  const CounterRng rng{7};
  std::vector<Complex> pts(20000);
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = rng.gaussian(i, 1.0);
  const auto idx = quantize_batch(cb, pts);
  REQUIRE(idx.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); i += 97)
    CHECK(idx[i] == oracle::brute_force_quantize(cb, pts[i]));

  // all centroids map to themselves
  std::vector<Complex> cents(cb.centroids.begin(), cb.centroids.end());
  const auto self = quantize_batch(cb, cents);
  for (int n = 1; n <= cb.size(); ++n) CHECK(self[n - 1] == n);
}

TEST_CASE("batch result does not depend on the worker count") {
  const Codebook cb = build_highrate(128, 1.0);
  const CounterRng rng{99};
  std::vector<Complex> pts(50000);
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = rng.gaussian(i, 1.0);
  setenv("GQ_THREADS", "1", 1);
  const auto one = quantize_batch(cb, pts);
  setenv("GQ_THREADS", "4", 1);
  const auto four = quantize_batch(cb, pts);
  unsetenv("GQ_THREADS");
  CHECK(one == four);
}

TEST_CASE("quantize is rotation invariant away from ties") {
  const CounterRng rng{5150};
  const Codebook cb = build_highrate(64, 1.0);
  const Real rot = 0.7343;
  const Complex phase(std::cos(rot), std::sin(rot));
  Codebook rotated = cb;
  rotated.scheme = Scheme::LBG;  // rotation breaks the GQ phase law
  for (int p = 0; p < cb.size(); ++p) rotated.centroids[p] *= phase;

  const NearestCentroid nn(cb), nn_rot(rotated);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const Complex z = rng.gaussian(i, 1.0);
    Real best;
    const int a = nn.nearest(z.real(), z.imag(), &best);
    // skip near-ties: rotation may legitimately flip them
    Real second = std::numeric_limits<Real>::infinity();
    for (int p = 0; p < cb.size(); ++p) {
      if (p == a) continue;
      second = std::min(second, std::norm(z - cb.centroids[p]));
    }
    if (std::sqrt(second) - std::sqrt(best) < 1e-9) continue;
    const Complex zr = z * phase;
    CHECK(nn_rot.nearest(zr.real(), zr.imag()) == a);
    ++checked;
  }
  CHECK(checked > 4000);
}
