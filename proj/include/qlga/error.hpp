#pragma once

#include <stdexcept>
#include <string>

namespace qlga {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or problem parameters (violated type invariants).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Two objects defined on different lattices were combined.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A numerical guard tripped: the requested quantity is singular or
/// undefined at these parameters.
class NumericalGuardError : public Error {
public:
  using Error::Error;
};

class NormError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class FlatBandError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class SingularMatchingError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class WindowError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class DegeneratePairError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class UndefinedPhaseError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class SizeGuardError : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

} // namespace qlga
