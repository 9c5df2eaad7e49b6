#pragma once

#include <stdexcept>
#include <string>

namespace qneclab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input: violated precondition, malformed parameter.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed JSON field description.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: ODE step underflow, non-finite jets, unconverged
/// quadrature or root bracketing.
class NumericalError : public Error {
public:
    using Error::Error;
};

class FlowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace qneclab
