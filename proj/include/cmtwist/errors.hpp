#pragma once

#include <stdexcept>
#include <string>

namespace cmtwist {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: out-of-range parameters, unsupported fields, twists outside
/// the admissible family.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical result could not be certified at the requested precision.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class PrecisionLoss : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class AgmBranchFailure : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NonCyclicClassGroup : public Error {
 public:
  using Error::Error;
};

class NotPrincipal : public Error {
 public:
  using Error::Error;
};

class RamifiedAtConductor : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

class PoleAtLatticePoint : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class SingularSolve : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class InconsistentFunctionalEquation : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class RoundingMarginExceeded : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class UnsupportedQ : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotHomotheticToOK : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NotASquare : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class RecognitionFailed : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NoRelationFound : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class NotInFamily : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A verification assertion did not hold.
class CheckFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace cmtwist
