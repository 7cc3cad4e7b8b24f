#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Input rejected before any numerics ran (bad profile, bad config, violated precondition).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Triangulation could not be built or is inconsistent.
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Factorization failure, non-convergence, or a broken internal identity.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical observation contradicts a statement that must hold for valid inputs.
class TheoryViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spectra
