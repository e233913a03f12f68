#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gq/highrate.hpp"
#include "gq/source_model.hpp"

using namespace gq;

TEST_CASE("radius law examples") {
  // direct evaluations of r = sigma*sqrt(2 ln(N/(N-n_eff)))
  CHECK(highrate_radius(256, 128, 1.0, RadiusConvention::Midpoint) ==
        doctest::Approx(1.1740941530765648).epsilon(1e-14));
  CHECK(highrate_radius(256, 256, 1.0, RadiusConvention::Midpoint) ==
        doctest::Approx(3.53223006754642407).epsilon(1e-14));
  CHECK(highrate_radius(2, 1, 1.0, RadiusConvention::RawClampLast) ==
        doctest::Approx(1.17741002251547469).epsilon(1e-14));
  // n = N falls back to N - 1/2 under both conventions
  CHECK(highrate_radius(2, 2, 1.0, RadiusConvention::RawClampLast) ==
        highrate_radius(2, 2, 1.0, RadiusConvention::Midpoint));
  CHECK_THROWS_AS(highrate_radius(4, 0, 1.0, RadiusConvention::Midpoint),
                  IndexOutOfRange);
  CHECK_THROWS_AS(highrate_radius(4, 5, 1.0, RadiusConvention::Midpoint),
                  IndexOutOfRange);
}

TEST_CASE("radii are strictly increasing and scale with sigma") {
  for (const auto conv :
       {RadiusConvention::Midpoint, RadiusConvention::RawClampLast}) {
    const ArrayXr r = highrate_radii(257, 1.0, conv);
    for (int i = 0; i + 1 < r.size(); ++i) CHECK(r[i] < r[i + 1]);
    const ArrayXr r4 = highrate_radii(257, 4.0, conv);
    for (int i = 0; i < r.size(); ++i)
      CHECK(r4[i] == doctest::Approx(2.0 * r[i]).epsilon(1e-14));
  }
}

TEST_CASE("point-density mass balance at cell midpoints") {
  // integral of the design density over |x| <= r_n equals n - 1/2:
  // N (1 - exp(-r^2 / 2 sigma2)) = n - 1/2 under the Midpoint convention
  const int N = 256;
  const Real sigma2 = 2.0;
  const ArrayXr r = highrate_radii(N, sigma2, RadiusConvention::Midpoint);
  for (int n = 1; n <= N; ++n) {
    const Real lambda_mass = N * -std::expm1(-r[n - 1] * r[n - 1] / (2 * sigma2));
    CHECK(lambda_mass == doctest::Approx(n - 0.5).epsilon(1e-12));
  }
}

TEST_CASE("build_highrate") {
  SUBCASE("N = 1 degenerates to a single ring at sqrt(2 ln 2) sigma") {
    const Codebook cb = build_highrate(1, 1.0);
    CHECK(std::abs(cb.centroid(1)) ==
          doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-14));
  }
  SUBCASE("N = 256 magnitudes match the profile anchors") {
    const Codebook cb = build_highrate(256, 1.0);
    CHECK(std::abs(cb.centroid(256)) == doctest::Approx(3.5322).epsilon(1e-4));
    CHECK(std::abs(cb.centroid(128)) == doctest::Approx(1.1741).epsilon(1e-4));
    CHECK(cb.scheme == Scheme::HighRateGQ);
    CHECK_NOTHROW(validate(cb));
    // dense near the origin, sparse at the edge
    const Real inner = std::abs(cb.centroid(2)) - std::abs(cb.centroid(1));
    const Real outer = std::abs(cb.centroid(256)) - std::abs(cb.centroid(255));
    CHECK(outer > 5.0 * inner);
  }
}

TEST_CASE("analytic distortion and rates") {
  CHECK(analytic_distortion_hr(256, 1.0) ==
        doctest::Approx(0.00818123086872341989).epsilon(1e-15));
  CHECK(analytic_distortion_hr(1, 1.0) ==
        doctest::Approx(2.09439510239319549).epsilon(1e-15));
  CHECK(analytic_distortion_hr(100, 2.0) ==
        doctest::Approx(2.0 * analytic_distortion_hr(100, 1.0)).epsilon(1e-15));

  // the gap between the high-rate rate and the rd bound is a constant
  const Real gap = std::log2(2.0 * kPi / 3.0);
  for (const Real d : {1e-6, 1e-4, 1e-2, 0.5, 1.0}) {
    CHECK(std::abs(analytic_rate_hr(d, 1.0) - rd_rate(d, 1.0) - gap) < 1e-12);
    CHECK(std::abs(analytic_rate_hr(d, 3.0) - rd_rate(d, 3.0) - gap) < 1e-12);
  }
  CHECK(rd_rate(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(rd_rate(std::exp2(-8.0), 1.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_rate_hr(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(rd_rate(-1.0, 1.0), DomainError);
}

TEST_CASE("entropy model") {
  SUBCASE("N = 4 probabilities") {
    const EntropyModel m = entropy_model(4);
    REQUIRE(m.probabilities.size() == 4);
    CHECK(m.probabilities[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(m.probabilities[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m.probabilities[2] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(m.probabilities[3] == doctest::Approx(0.1).epsilon(1e-15));
  }
  SUBCASE("N = 1 is the unit mass") {
    CHECK(entropy_model(1).probabilities[0] == doctest::Approx(1.0));
  }
  SUBCASE("sums to one and is nonincreasing for any N") {
    for (const int n : {2, 3, 17, 256, 1000}) {
      const EntropyModel m = entropy_model(n);
      CHECK(m.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 0; i + 1 < n; ++i)
        CHECK(m.probabilities[i] >= m.probabilities[i + 1]);
      CHECK(m.probabilities.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("entropy-coded closed forms") {
  CHECK(analytic_entropy_echr(256) ==
        doctest::Approx(7.7213475204444817).epsilon(1e-15));
  const Real gap = std::log2(2.0 / std::sqrt(std::exp(1.0)));
  CHECK(gap == doctest::Approx(0.278652479555518296).epsilon(1e-15));
  for (const Real d : {1e-5, 1e-3, 0.1})
    CHECK(std::abs(analytic_rate_hr(d, 1.0) - analytic_rate_echr(d, 1.0) - gap) <
          1e-12);
  CHECK_THROWS_AS(analytic_entropy_echr(1), DomainError);

  // the exact finite-sum entropy of the model stays close to the asymptote
  const Real exact = entropy_bits(entropy_model(256).probabilities);
  CHECK(exact == doctest::Approx(7.72413409462119813).epsilon(1e-12));
  CHECK(std::abs(exact - analytic_entropy_echr(256)) < 0.02);
}
