#include "gq/scalar_quantizer.hpp"

#include <cmath>
#include <limits>

namespace gq {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

Real norm_pdf(Real z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

Real norm_cdf(Real z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Acklam's rational approximation of the standard normal quantile,
// polished with one Halley step. Accurate to ~1e-15 over (0, 1).
Real norm_quantile(Real p) {
  static const Real a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                           -2.759285104469687e+02, 1.383577518672690e+02,
                           -3.066479806614716e+01, 2.506628277459239e+00};
  static const Real b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                           -1.556989798598866e+02, 6.680131188771972e+01,
                           -1.328068155288572e+01};
  static const Real c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                           -2.400758277161838e+00, -2.549732539343734e+00,
                           4.374664141464968e+00,  2.938163982698783e+00};
  static const Real d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                           2.445134137142996e+00, 3.754408661907416e+00};
  const Real plow = 0.02425, phigh = 1 - plow;
  Real x;
  if (p < plow) {
    const Real q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    const Real q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const Real q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const Real e = norm_cdf(x) - p;
  const Real u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1 + 0.5 * x * u);
}

}  // namespace

Real ScalarDensity::support_lo() const {
  return kind == Kind::Rayleigh ? 0.0 : -kInf;
}

Real ScalarDensity::mass(Real a, Real b) const {
  if (kind == Kind::GaussianPerDim) {
    const Real sd = std::sqrt(param);
    const Real ca = std::isinf(a) ? 0.0 : norm_cdf(a / sd);
    const Real cb = std::isinf(b) ? 1.0 : norm_cdf(b / sd);
    return cb - ca;
  }
  auto tail = [&](Real r) {
    return std::isinf(r) ? 0.0 : std::exp(-r * r / param);
  };
  return tail(a) - tail(b);
}

Real ScalarDensity::first_moment(Real a, Real b) const {
  if (kind == Kind::GaussianPerDim) {
    const Real sd = std::sqrt(param);
    auto t = [&](Real x) {
      return std::isinf(x) ? 0.0 : norm_pdf(x / sd);
    };
    return sd * (t(a) - t(b));
  }
  const Real s = std::sqrt(param);
  auto t = [&](Real r) {
    if (std::isinf(r)) return s * std::sqrt(kPi) / 2.0;
    return -r * std::exp(-r * r / param) + (s * std::sqrt(kPi) / 2.0) * std::erf(r / s);
  };
  return t(b) - t(a);
}

Real ScalarDensity::second_moment(Real a, Real b) const {
  if (kind == Kind::GaussianPerDim) {
    const Real sd = std::sqrt(param);
    auto t = [&](Real x) {
      return std::isinf(x) ? 0.0 : x * norm_pdf(x / sd);
    };
    return param * mass(a, b) + sd * (t(a) - t(b));
  }
  auto t = [&](Real r) {
    return std::isinf(r) ? 0.0 : -(r * r + param) * std::exp(-r * r / param);
  };
  return t(b) - t(a);
}

Real ScalarDensity::mean() const {
  if (kind == Kind::GaussianPerDim) return 0.0;
  return std::sqrt(param) * std::sqrt(kPi) / 2.0;
}

Real ScalarDensity::quantile(Real p) const {
  if (!(p > 0 && p < 1)) throw DomainError("quantile: p must be in (0, 1)");
  if (kind == Kind::GaussianPerDim) return std::sqrt(param) * norm_quantile(p);
  return std::sqrt(-param * std::log1p(-p));
}

namespace {

ArrayXr boundaries_of(const ArrayXr& levels) {
  const int n = static_cast<int>(levels.size());
  ArrayXr b(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) b[i] = 0.5 * (levels[i] + levels[i + 1]);
  return b;
}

Real mse_of(const ArrayXr& levels, const ArrayXr& boundaries,
            const ScalarDensity& density) {
  const int n = static_cast<int>(levels.size());
  Real mse = 0;
  for (int i = 0; i < n; ++i) {
    const Real a = i == 0 ? density.support_lo() : boundaries[i - 1];
    const Real b = i == n - 1 ? kInf : boundaries[i];
    mse += density.second_moment(a, b) - 2 * levels[i] * density.first_moment(a, b) +
           levels[i] * levels[i] * density.mass(a, b);
  }
  return mse;
}

}  // namespace

ScalarQuantizer lloyd_scalar(const ScalarDensity& density, int N, Real tol,
                             int max_iter) {
  if (N < 1) throw DomainError("lloyd_scalar: N must be >= 1");
  ScalarQuantizer q;
  q.levels.resize(N);
  if (N == 1) {
    q.levels[0] = density.mean();
    q.boundaries.resize(0);
    q.mse = mse_of(q.levels, q.boundaries, density);
    q.converged = true;
    return q;
  }
  for (int i = 0; i < N; ++i)
    q.levels[i] = density.quantile((i + 0.5) / N);

  const Real scale = std::sqrt(density.param);
  for (int it = 0; it < max_iter; ++it) {
    q.boundaries = boundaries_of(q.levels);
    Real movement = 0;
    for (int i = 0; i < N; ++i) {
      const Real a = i == 0 ? density.support_lo() : q.boundaries[i - 1];
      const Real b = i == N - 1 ? kInf : q.boundaries[i];
      const Real m = density.mass(a, b);
      if (m > 0) {
        const Real next = density.first_moment(a, b) / m;
        movement = std::max(movement, std::abs(next - q.levels[i]));
        q.levels[i] = next;
      }
    }
    q.iterations = it + 1;
    if (movement <= tol * scale) {
      q.converged = true;
      break;
    }
  }
  q.boundaries = boundaries_of(q.levels);
  q.mse = mse_of(q.levels, q.boundaries, density);
  return q;
}

Real scalar_mse(const ScalarQuantizer& q, const ScalarDensity& density) {
  return mse_of(q.levels, q.boundaries, density);
}

}  // namespace gq
