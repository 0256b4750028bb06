// errors.hpp - exception taxonomy; the CLI maps these onto exit codes
#pragma once

#include <stdexcept>
#include <string>

namespace diskfar {

/// Violated precondition or spec invariant (bad geometry, negative counts, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file; message names the offending location when known.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Query outside a sampled domain or a grid that does not cover a requested region.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed input that leads to an undefined numeric result (zero total power, ...).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argmax refinement requested without an interior bracket.
struct NoBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace diskfar
