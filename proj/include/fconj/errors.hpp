#ifndef FCONJ_ERRORS_HPP
#define FCONJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fconj {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: marking counts out of range, mismatched n, i == j, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Empty or full subset passed where a generator side is expected.
class InvalidGenerator : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Text or JSON that does not parse into the expected structure.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A design with the wrong number or size of blocks.
class MalformedDesign : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A structurally valid object failed a mathematical check.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

// Constructions whose constants are only defined for particular n.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// pullback_forgetful received a class with psi-type keys.
class RequiresBoundaryForm : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace fconj

#endif  // FCONJ_ERRORS_HPP
