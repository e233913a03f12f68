#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "gq/highrate.hpp"
#include "gq/lloydmax.hpp"
#include "gq/quadrature.hpp"
#include "oracles.hpp"

using namespace gq;

namespace {
Codebook gq_codebook(const ArrayXr& radii, Real sigma2) {
  return spiral_centroids(radii, Scheme::LloydMaxGQ, sigma2);
}
}  // namespace

TEST_CASE("grid construction and coverage checks") {
  CHECK_THROWS_AS(QuadratureGrid(0.0, 64), DomainError);
  CHECK_THROWS_AS(QuadratureGrid(1.0, 1), DomainError);
  const QuadratureGrid tight(2.0, 256);
  CHECK_THROWS_AS(tight.require_covers(1.0, 16), GridTooCoarse);  // extent
  const QuadratureGrid coarse(4.5, 16);
  CHECK_THROWS_AS(coarse.require_covers(1.0, 64), GridTooCoarse);  // resolution
  CHECK_NOTHROW(QuadratureGrid(4.5, 2048).require_covers(1.0, 256));
  const QuadratureGrid def = QuadratureGrid::defaults_for(256, 1.0);
  CHECK(def.resolution == 2048);
  CHECK(def.extent == doctest::Approx(4.5));
}

TEST_CASE("objective matches the source second moment for N = 1 at the origin") {
  ArrayXr radii(1);
  radii << 0.0;
  const QuadratureGrid grid(4.5, 2048);
  const Real d = lm_objective(gq_codebook(radii, 1.0), SourceModel(1.0), grid);
  CHECK(d == doctest::Approx(1.0).epsilon(1e-4));

  const QuadratureGrid grid2(4.5 * std::sqrt(2.0), 2048);
  const Real d2 = lm_objective(gq_codebook(radii, 2.0), SourceModel(2.0), grid2);
  CHECK(d2 == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("objective agrees with the high-rate closed form at N = 256") {
  const Codebook cb = build_highrate(256, 1.0);
  const Real d = lm_objective(cb, SourceModel(1.0), QuadratureGrid(4.5, 2048));
  CHECK(d == doctest::Approx(analytic_distortion_hr(256, 1.0)).epsilon(0.03));
}

TEST_CASE("a shadowed centroid raises the empty-cell errors") {
  ArrayXr radii(2);
  radii << 0.0, 12.0;  // second centroid far outside the grid
  const Codebook cb = gq_codebook(radii, 1.0);
  const QuadratureGrid grid(4.5, 64);
  CHECK_THROWS_AS(lm_objective(cb, SourceModel(1.0), grid), GridTooCoarse);
  LloydMaxState state;
  state.radii = radii;
  CHECK_THROWS_AS(lm_update(state, SourceModel(1.0), grid), EmptyCell);
}

TEST_CASE("single update drives N = 1 to the origin") {
  LloydMaxState state;
  state.radii = ArrayXr::Constant(1, 1.7);
  const auto next = lm_update(state, SourceModel(1.0), QuadratureGrid(4.5, 512));
  CHECK(std::abs(next.radii[0]) <= 1e-6);
  CHECK(next.iteration == 1);
  REQUIRE(next.distortion_trace.size() == 2);
  CHECK(next.distortion_trace[1] <= next.distortion_trace[0] + 1e-12);
}

TEST_CASE("optimizer on small problems") {
  const QuadratureGrid grid(4.5, 512);
  SUBCASE("N = 1 converges to the origin") {
    const auto [cb, state] =
        optimize_lloydmax(1, 1.0, LmInit::HighRate, false, 1e-9, 100, grid);
    CHECK(std::abs(cb.centroid(1)) <= 1e-6);
    CHECK(state.converged);
  }
  SUBCASE("descent, fixed angles, and metadata") {
    const auto [cb, state] =
        optimize_lloydmax(16, 1.0, LmInit::HighRate, false, 1e-9, 200, grid);
    REQUIRE(state.distortion_trace.size() >= 2);
    for (std::size_t k = 1; k < state.distortion_trace.size(); ++k)
      CHECK(state.distortion_trace[k] <= state.distortion_trace[k - 1] + 1e-12);
    CHECK_NOTHROW(validate(cb));  // angles still on the golden-angle law
    CHECK(std::get<bool>(cb.metadata.at("converged")));
    CHECK(std::get<std::int64_t>(cb.metadata.at("iterations")) ==
          state.iteration);
    CHECK(std::get<Real>(cb.metadata.at("final_distortion")) ==
          doctest::Approx(state.distortion_trace.back()));
    // optimization reduces distortion below the starting design
    CHECK(state.distortion_trace.back() < state.distortion_trace.front());
  }
  SUBCASE("uniform init lands at the same optimum") {
    const auto [cb_h, s_h] =
        optimize_lloydmax(8, 1.0, LmInit::HighRate, false, 1e-10, 500, grid);
    const auto [cb_u, s_u] =
        optimize_lloydmax(8, 1.0, LmInit::Uniform, false, 1e-10, 500, grid);
    CHECK(s_h.distortion_trace.back() ==
          doctest::Approx(s_u.distortion_trace.back()).epsilon(1e-4));
  }
  SUBCASE("monotone constraint yields nondecreasing radii") {
    const auto [cb, state] =
        optimize_lloydmax(16, 1.0, LmInit::Uniform, true, 1e-9, 200, grid);
    for (int i = 0; i + 1 < state.radii.size(); ++i)
      CHECK(state.radii[i] <= state.radii[i + 1] + 1e-15);
    for (std::size_t k = 1; k < state.distortion_trace.size(); ++k)
      CHECK(state.distortion_trace[k] <= state.distortion_trace[k - 1] + 1e-12);
  }
}

TEST_CASE("N = 2 optimum matches a derivative-free direct minimization") {
  const QuadratureGrid grid(4.5, 1024);
  const SourceModel src(1.0);
  const auto [cb, state] =
      optimize_lloydmax(2, 1.0, LmInit::HighRate, false, 1e-13, 3000, grid);

  auto objective = [&](const std::vector<Real>& rv) {
    ArrayXr radii(2);
    radii << std::max(rv[0], 0.0), std::max(rv[1], 0.0);
    return lm_objective(gq_codebook(radii, 1.0), src, grid);
  };
  const ArrayXr start = highrate_radii(2, 1.0, RadiusConvention::Midpoint);
  const auto best =
      oracle::compass_minimize({start[0], start[1]}, objective, 0.25, 1e-9);
  CHECK(std::abs(best[0] - state.radii[0]) < 1e-3);
  CHECK(std::abs(best[1] - state.radii[1]) < 1e-3);
}

TEST_CASE("scale equivariance in sigma2") {
  const QuadratureGrid g1(4.5, 512);
  const QuadratureGrid g3(4.5 * std::sqrt(3.0), 512);
  const auto [cb1, s1] =
      optimize_lloydmax(12, 1.0, LmInit::HighRate, false, 1e-10, 300, g1);
  const auto [cb3, s3] =
      optimize_lloydmax(12, 3.0, LmInit::HighRate, false, 1e-10, 300, g3);
  for (int i = 0; i < 12; ++i)
    CHECK(s3.radii[i] ==
          doctest::Approx(std::sqrt(3.0) * s1.radii[i]).epsilon(1e-6));
  CHECK(s3.distortion_trace.back() ==
        doctest::Approx(3.0 * s1.distortion_trace.back()).epsilon(1e-6));
}

TEST_CASE("doubling the grid barely moves the converged distortion") {
  const auto [cb_a, s_a] = optimize_lloydmax(64, 1.0, LmInit::HighRate, false,
                                             1e-8, 400, QuadratureGrid(4.5, 768));
  const auto [cb_b, s_b] = optimize_lloydmax(64, 1.0, LmInit::HighRate, false,
                                             1e-8, 400, QuadratureGrid(4.5, 1536));
  const Real rel = std::abs(s_a.distortion_trace.back() -
                            s_b.distortion_trace.back()) /
                   s_b.distortion_trace.back();
  CHECK(rel < 0.005);
}

TEST_CASE("objective is bitwise identical across worker counts") {
  const Codebook cb = build_highrate(64, 1.0);
  const QuadratureGrid grid(4.5, 512);
  setenv("GQ_THREADS", "1", 1);
  const Real one = lm_objective(cb, SourceModel(1.0), grid);
  setenv("GQ_THREADS", "3", 1);
  const Real three = lm_objective(cb, SourceModel(1.0), grid);
  unsetenv("GQ_THREADS");
  CHECK(one == three);
}

TEST_CASE("pool-adjacent-violators projection") {
  ArrayXr v(5), w(5);
  v << 1.0, 3.0, 2.0, 5.0, 4.0;
  w << 1.0, 1.0, 1.0, 1.0, 1.0;
  const ArrayXr p = pav_nondecreasing(v, w);
  for (int i = 0; i + 1 < p.size(); ++i) CHECK(p[i] <= p[i + 1]);
  CHECK(p[1] == doctest::Approx(2.5));
  CHECK(p[2] == doctest::Approx(2.5));
  CHECK(p[3] == doctest::Approx(4.5));
  CHECK(p[4] == doctest::Approx(4.5));
  // weights shift pooled means
  w << 1.0, 3.0, 1.0, 1.0, 1.0;
  const ArrayXr q = pav_nondecreasing(v, w);
  CHECK(q[1] == doctest::Approx((3.0 * 3 + 2.0) / 4.0));
  // already monotone input is untouched
  v << 1, 2, 3, 4, 5;
  CHECK((pav_nondecreasing(v, w) == v).all());
}
