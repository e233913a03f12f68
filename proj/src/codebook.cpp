#include "gq/codebook.hpp"

#include <cmath>
#include <string>

namespace gq {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::HighRateGQ: return "HighRateGQ";
    case Scheme::LloydMaxGQ: return "LloydMaxGQ";
    case Scheme::RectProduct: return "RectProduct";
    case Scheme::PolarProduct: return "PolarProduct";
    case Scheme::LBG: return "LBG";
  }
  throw InvalidScheme("unknown scheme enum value");
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "HighRateGQ" || name == "highrate") return Scheme::HighRateGQ;
  if (name == "LloydMaxGQ" || name == "lloydmax") return Scheme::LloydMaxGQ;
  if (name == "RectProduct" || name == "rect") return Scheme::RectProduct;
  if (name == "PolarProduct" || name == "polar") return Scheme::PolarProduct;
  if (name == "LBG" || name == "lbg") return Scheme::LBG;
  throw InvalidScheme("unknown scheme '" + name + "'");
}

Real golden_fraction() { return (3.0 - std::sqrt(5.0)) / 2.0; }

Real golden_angle() { return 2.0 * kPi * golden_fraction(); }

Real spiral_angle(int n) {
  return 2.0 * kPi * std::fmod(golden_fraction() * static_cast<Real>(n), 1.0);
}

Codebook spiral_centroids(const ArrayXr& radii, Scheme scheme, Real sigma2,
                          Metadata metadata) {
  if (radii.size() == 0) throw DomainError("spiral_centroids: empty radii");
  if (!(sigma2 > 0) || !std::isfinite(sigma2))
    throw DomainError("spiral_centroids: sigma2 must be finite and > 0");
  Codebook cb;
  cb.scheme = scheme;
  cb.sigma2 = sigma2;
  cb.metadata = std::move(metadata);
  cb.centroids.resize(radii.size());
  for (int k = 0; k < radii.size(); ++k) {
    const Real r = radii[k];
    if (!std::isfinite(r))
      throw NonFiniteRadius("spiral_centroids: radius " + std::to_string(k + 1) +
                            " is not finite");
    if (r < 0)
      throw DomainError("spiral_centroids: radius " + std::to_string(k + 1) +
                        " is negative");
    const Real theta = spiral_angle(k + 1);
    cb.centroids[k] = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  return cb;
}

void validate(const Codebook& cb) {
  if (cb.size() < 1) throw FormatError("codebook: N must be >= 1");
  if (!(cb.sigma2 > 0) || !std::isfinite(cb.sigma2))
    throw FormatError("codebook: sigma2 must be finite and > 0");
  for (int k = 0; k < cb.size(); ++k) {
    const Complex c = cb.centroids[k];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw FormatError("codebook: centroid " + std::to_string(k + 1) +
                        " is not finite");
  }
  const bool gq_scheme =
      cb.scheme == Scheme::HighRateGQ || cb.scheme == Scheme::LloydMaxGQ;
  if (gq_scheme) {
    constexpr Real kAngleTol = 1e-12;
    for (int k = 0; k < cb.size(); ++k) {
      const Complex c = cb.centroids[k];
      if (std::abs(c) == 0.0) continue;  // phase undefined at the origin
      const Real want = spiral_angle(k + 1);
      const Real got = std::atan2(c.imag(), c.real());
      const Real diff = std::remainder(got - want, 2.0 * kPi);
      if (std::abs(diff) > kAngleTol)
        throw FormatError("codebook: centroid " + std::to_string(k + 1) +
                          " violates the golden-angle phase law");
    }
  }
}

}  // namespace gq
