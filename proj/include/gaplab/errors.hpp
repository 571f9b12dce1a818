#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonInvertible : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct EmptyBlock : Error {
  using Error::Error;
};

struct NotGaugeReduced : Error {
  using Error::Error;
};

struct NonPositiveOffdiag : Error {
  using Error::Error;
};

struct EnergyTooCloseToBlockSpectrum : Error {
  using Error::Error;
};

struct SingularCocycle : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace gaplab
