#pragma once

#include "gq/codebook.hpp"
#include "gq/types.hpp"

namespace gq {

/// How the closed-form radius law handles the diverging outermost index.
/// Midpoint evaluates every index at n - 1/2 (all radii finite); RawClampLast
/// keeps the law verbatim for n < N and evaluates n = N at N - 1/2.
enum class RadiusConvention { Midpoint, RawClampLast };

/// Closed-form radius of spiral index n for an N-point high-rate design:
/// r = sigma * sqrt(2 * ln(N / (N - n_eff))) with n_eff per the convention.
Real highrate_radius(int N, int n, Real sigma2, RadiusConvention convention);

/// All N radii, strictly increasing in n.
ArrayXr highrate_radii(int N, Real sigma2, RadiusConvention convention);

/// Closed-form high-rate codebook (scheme HighRateGQ).
Codebook build_highrate(int N, Real sigma2,
                        RadiusConvention convention = RadiusConvention::Midpoint);

/// Asymptotic MSE of the N-point high-rate design: 2*pi*sigma2 / (3*N).
Real analytic_distortion_hr(int N, Real sigma2);

/// Rate achieving distortion D under the high-rate law: log2(2*pi*sigma2 / (3*D)).
Real analytic_rate_hr(Real distortion, Real sigma2);

/// Rate-distortion bound rate: log2(sigma2 / D).
Real rd_rate(Real distortion, Real sigma2);

/// High-rate cell probabilities for entropy-coded operation. probability(n)
/// is stored at position n-1 for spiral index n = 1..N and equals
/// 2*(N - n + 1) / (N*(N+1)); the sum telescopes to exactly 1.
struct EntropyModel {
  int N = 1;
  ArrayXr probabilities;
};

EntropyModel entropy_model(int N);

/// Asymptotic index entropy of the entropy-coded high-rate design:
/// log2(N) - 1 + log2(sqrt(e)). Requires N >= 2.
Real analytic_entropy_echr(int N);

/// Rate of the entropy-coded design at distortion D:
/// log2(pi * sqrt(e) * sigma2 / (3*D)).
Real analytic_rate_echr(Real distortion, Real sigma2);

/// Exact Shannon entropy in bits of a probability vector (0*log 0 := 0).
Real entropy_bits(const ArrayXr& probabilities);

}  // namespace gq
