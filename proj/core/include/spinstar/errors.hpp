#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad sizes, geometry, configuration fields, malformed input documents.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A state or argument broke a documented contract (e.g. norm out of range).
class ContractError : public Error {
public:
    using Error::Error;
};

// Reduction refused: n below the minimum, n > M, or a degenerate
// transformation coefficient.
class ReductionError : public Error {
public:
    using Error::Error;
};

// Eigendecomposition failure, step-size collapse, or any other breakdown of
// the numerical machinery.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace spinstar
