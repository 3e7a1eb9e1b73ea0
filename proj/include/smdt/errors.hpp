#pragma once

#include <stdexcept>
#include <string>

namespace smdt {

// Thrown by constructors and parsers on malformed input.
struct InvalidPattern : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation requires a binary alphabet.
struct AlphabetUnsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// find_bifix_free called on a pattern with a proper bifix.
struct PatternNotBifixFree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// p_of_b / has_property1 called with a string that is not a proper bifix.
struct NotABifix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Generic precondition failure (e.g. b1_reduce on a short bifix).
struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exhaustive computation would exceed the configured state budget.
struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric root finder could not certify its result.
struct RootFindingFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace smdt
