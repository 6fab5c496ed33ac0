#pragma once

#include <stdexcept>
#include <string>

namespace sp4gen {

// Malformed input (bad JSON shape, unknown labels, inconsistent flags).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is well formed but violates an operation's precondition
// (zero argument, abstract mode where a prime is needed, depth too small...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Search ran out of precision before reaching a decision.
struct PrecisionError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// An internal identity failed. Always a bug or a refuted claim.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sp4gen
