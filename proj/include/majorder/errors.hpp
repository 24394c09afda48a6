#pragma once

#include <stdexcept>
#include <string>

namespace majorder {

// Base class for every library error, so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct EmptyChainError : Error {
    using Error::Error;
};

struct WeightMismatchError : Error {
    using Error::Error;
};

// The support of a measure is required to be a monotone chain and is not.
// Distinct from "the relation fails": the chain is a structural precondition.
struct ChainViolationError : Error {
    int failing_index;
    ChainViolationError(const std::string& what, int index)
        : Error(what), failing_index(index) {}
};

struct CapabilityError : Error {
    using Error::Error;
};

struct EmptyDomainError : Error {
    using Error::Error;
};

struct DegenerateBoxError : Error {
    using Error::Error;
};

struct BoxTooSmallError : Error {
    using Error::Error;
};

struct DomainEscapeError : Error {
    using Error::Error;
};

// A theorem hypothesis failed before any inequality was evaluated. The
// message names the first violated link.
struct PreconditionError : Error {
    using Error::Error;
};

struct AmbiguousCaseError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    int line;
    ConfigError(const std::string& what, int line_no) : Error(what), line(line_no) {}
};

} // namespace majorder
