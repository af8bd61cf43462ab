#pragma once

#include <stdexcept>
#include <string>

namespace ruelle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix whose determinant vanishes; it cannot be scaled to |det| = 1.
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

/// Isometry that does not translate along a geodesic (elliptic, parabolic,
/// reflection, identity).
class NotClosedGeodesicError : public Error {
 public:
  using Error::Error;
};

/// Linearized return map with an eigenvalue on the unit circle or on the
/// wrong side of it.
class InvalidSplittingError : public Error {
 public:
  using Error::Error;
};

/// An orbit and its return-map data disagree, or an internal identity
/// failed to hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IncompleteCensusError : public Error {
 public:
  using Error::Error;
};

/// Spectral parameter outside the half-plane where the orbit sums converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Character that does not kill the surface relator.
class InconsistentSystemError : public Error {
 public:
  using Error::Error;
};

/// Surface with non-negative Euler characteristic passed where a
/// negatively curved one is required.
class HypothesisViolationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLocalSystemError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ruelle
