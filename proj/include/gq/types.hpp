#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

namespace gq {

using Real = double;
using Complex = std::complex<Real>;
using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;
using ArrayXi = Eigen::ArrayXi;

inline constexpr Real kPi = 3.14159265358979323846;

/// Centroid construction families. The GQ schemes carry the fixed
/// golden-angle phase law; the others are unconstrained point sets.
enum class Scheme { HighRateGQ, LloydMaxGQ, RectProduct, PolarProduct, LBG };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// Metadata values survive JSON round-trips exactly (doubles are written
/// with 17 significant digits).
using MetaValue = std::variant<bool, std::int64_t, Real, std::string>;
using Metadata = std::map<std::string, MetaValue>;

/// Base of the library error hierarchy. exit_code() is the CLI contract:
/// 2 for data/format problems, 3 for numerical failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 2; }
};

struct IoError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct IndexOutOfRange : DomainError {
  using DomainError::DomainError;
};
struct NonFiniteRadius : DomainError {
  using DomainError::DomainError;
};
struct InvalidN : DomainError {
  using DomainError::DomainError;
};
struct InvalidScheme : DomainError {
  using DomainError::DomainError;
};

struct NumericalError : Error {
  using Error::Error;
  int exit_code() const override { return 3; }
};
struct GridTooCoarse : NumericalError {
  using NumericalError::NumericalError;
};
struct EmptyCell : NumericalError {
  using NumericalError::NumericalError;
};
struct ZeroPower : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace gq
