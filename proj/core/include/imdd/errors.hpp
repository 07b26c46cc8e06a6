#pragma once

#include <stdexcept>
#include <string>

namespace imdd {

/// An argument lies outside the mathematical domain of the operation
/// (roll-off below the minimum, non-positive symbol duration, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller-side precondition was violated (insufficient guard symbols,
/// symbols not drawn from the constellation, ISI-free contract void, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The requested combination is well-formed but not supported by the model.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A periodic pulse sum needs more terms than the hard cap allows; this
/// signals a roll-off too small for the requested tail tolerance.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace imdd
