#pragma once

#include <stdexcept>
#include <string>

namespace pseudosun {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid or sample set that cannot carry a quadrature (too few points,
/// empty window, negative frequencies).
class InvalidGridError : public Error {
 public:
  using Error::Error;
};

/// Physical parameters outside their admissible domain.
class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The reference quantity of a normalization mode is zero (or has no
/// positive maximum) over the whole trajectory.
class CannotNormalizeError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudosun
