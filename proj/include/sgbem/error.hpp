#pragma once

#include <stdexcept>
#include <string>

namespace sgbem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (parameter outside [a,b], bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid input data: knot vectors, control points, problem descriptions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The curve derivative vanishes where a normal or jacobian is needed.
class SingularParametrization : public Error {
 public:
  using Error::Error;
};

/// Requested feature is not available for this configuration.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Linear algebra breakdown (singular factorization, zero eigenvalue, ...).
class SolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgbem
