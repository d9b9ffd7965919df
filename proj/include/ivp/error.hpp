#pragma once

#include <stdexcept>
#include <string>

namespace ivp {

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's precondition (e.g. a scaling constant
/// outside the admissible valuation range).
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

/// An element was passed to a map whose domain it does not belong to.
class DomainError : public InputError {
public:
    using InputError::InputError;
};

/// No admissible choice exists (e.g. every candidate representative excluded).
class EmptyChoiceError : public InputError {
public:
    using InputError::InputError;
};

/// A configured bound (depth, degree cap, witness search) was exhausted.
/// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked property failed. Maps to CLI exit code 1.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ivp
