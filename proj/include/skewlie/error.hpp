#pragma once

#include <stdexcept>
#include <string>

namespace skewlie {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands come from different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A ring descriptor was rejected (e.g. characteristic 2, composite modulus).
class InvalidRing : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this ring (inverse in a non-field, solving over polynomials).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// s_{i,i} and friends: an index pair that must be distinct was not.
class DegenerateIndex : public IndexError {
 public:
  using IndexError::IndexError;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A full matrix handed to a skew-only constructor was not skew-symmetric.
class NotSkew : public Error {
 public:
  using Error::Error;
};

/// The caller broke a checked precondition (equal basis images, witness oracle present, ...).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete external input (JSON documents, basis tables).
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewlie
