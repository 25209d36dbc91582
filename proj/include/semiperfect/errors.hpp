#pragma once

#include <stdexcept>
#include <string>

namespace semiperfect {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

/// The operation is not available for the ring backend of its input.
class BackendUnsupported : public Error {
 public:
  using Error::Error;
};

class ResidueNotIdempotent : public Error {
 public:
  using Error::Error;
};

/// An iteration exceeded its proven step bound; indicates an internal bug.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotPrimitiveResidue : public Error {
 public:
  using Error::Error;
};

class NotOrthogonalResidues : public Error {
 public:
  using Error::Error;
};

class NotRowConvergent : public Error {
 public:
  using Error::Error;
};

class NotSummable : public Error {
 public:
  using Error::Error;
};

}  // namespace semiperfect
