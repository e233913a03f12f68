#include "gq/highrate.hpp"

#include <cmath>
#include <string>

namespace gq {

namespace {

void check_N_sigma(int N, Real sigma2, const char* where) {
  if (N < 1) throw DomainError(std::string(where) + ": N must be >= 1");
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError(std::string(where) + ": sigma2 must be finite and > 0");
}

}  // namespace

Real highrate_radius(int N, int n, Real sigma2, RadiusConvention convention) {
  check_N_sigma(N, sigma2, "highrate_radius");
  if (n < 1 || n > N)
    throw IndexOutOfRange("highrate_radius: n = " + std::to_string(n) +
                          " outside 1.." + std::to_string(N));
  Real n_eff;
  if (convention == RadiusConvention::Midpoint) {
    n_eff = n - 0.5;
  } else {
    n_eff = (n == N) ? N - 0.5 : static_cast<Real>(n);
  }
  return std::sqrt(sigma2) *
         std::sqrt(2.0 * std::log(static_cast<Real>(N) / (N - n_eff)));
}

ArrayXr highrate_radii(int N, Real sigma2, RadiusConvention convention) {
  check_N_sigma(N, sigma2, "highrate_radii");
  ArrayXr radii(N);
  for (int n = 1; n <= N; ++n)
    radii[n - 1] = highrate_radius(N, n, sigma2, convention);
  return radii;
}

Codebook build_highrate(int N, Real sigma2, RadiusConvention convention) {
  Metadata meta;
  meta["convention"] = std::string(
      convention == RadiusConvention::Midpoint ? "midpoint" : "rawclamplast");
  return spiral_centroids(highrate_radii(N, sigma2, convention),
                          Scheme::HighRateGQ, sigma2, std::move(meta));
}

Real analytic_distortion_hr(int N, Real sigma2) {
  check_N_sigma(N, sigma2, "analytic_distortion_hr");
  return 2.0 * kPi * sigma2 / (3.0 * N);
}

Real analytic_rate_hr(Real distortion, Real sigma2) {
  if (!(distortion > 0))
    throw DomainError("analytic_rate_hr: distortion must be > 0");
  return std::log2(2.0 * kPi * sigma2 / (3.0 * distortion));
}

Real rd_rate(Real distortion, Real sigma2) {
  if (!(distortion > 0)) throw DomainError("rd_rate: distortion must be > 0");
  return std::log2(sigma2 / distortion);
}

EntropyModel entropy_model(int N) {
  if (N < 1) throw DomainError("entropy_model: N must be >= 1");
  EntropyModel model;
  model.N = N;
  model.probabilities.resize(N);
  const Real denom = static_cast<Real>(N) * (static_cast<Real>(N) + 1);
  for (int n = 1; n <= N; ++n)
    model.probabilities[n - 1] = 2.0 * (N - n + 1) / denom;
  return model;
}

Real analytic_entropy_echr(int N) {
  if (N < 2)
    throw DomainError("analytic_entropy_echr: asymptotic form needs N >= 2");
  return std::log2(static_cast<Real>(N)) - 1.0 + std::log2(std::sqrt(std::exp(1.0)));
}

Real analytic_rate_echr(Real distortion, Real sigma2) {
  if (!(distortion > 0))
    throw DomainError("analytic_rate_echr: distortion must be > 0");
  return std::log2(kPi * std::sqrt(std::exp(1.0)) * sigma2 / (3.0 * distortion));
}

Real entropy_bits(const ArrayXr& probabilities) {
  Real h = 0;
  for (int i = 0; i < probabilities.size(); ++i) {
    const Real p = probabilities[i];
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace gq
