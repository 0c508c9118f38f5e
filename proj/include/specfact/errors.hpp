#pragma once

#include <stdexcept>
#include <string>

namespace specfact {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic misuse: division by zero, mixing elements of different fields,
/// asking for the sign of a non-real number.
class math_error : public error {
public:
    using error::error;
};

/// Malformed or semantically invalid input (syntax, pole outside the disk, ...).
class input_error : public error {
public:
    using error::error;
};

/// Input that is well-formed but violates a hypothesis of the construction,
/// e.g. an incomplete pole list or a singular coefficient system.
class inconsistent_input : public input_error {
public:
    using input_error::input_error;
};

/// A verification identity failed on data that passed validation. Always a bug.
class internal_error : public error {
public:
    using error::error;
};

/// A certificate identity failed after a construction.
class certificate_error : public internal_error {
public:
    using internal_error::internal_error;
};

}  // namespace specfact
