#pragma once

#include <stdexcept>

namespace hashpebble {

/// Argument has the wrong shape (e.g. a value of the wrong width).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unknown name or unsupported option.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation not valid in the object's current state.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A chain has been fully released; no further preimages exist.
class ExhaustedError : public StateError {
public:
    using StateError::StateError;
};

/// Malformed serialized input.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hashpebble
