#pragma once

#include <stdexcept>
#include <string>

namespace tla {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct EmptyGroupError : Error {
    using Error::Error;
};

struct NoGroupsError : Error {
    using Error::Error;
};

// Charged payment exceeds what the group's bidders can split equally.
struct InfeasiblePaymentError : Error {
    using Error::Error;
};

// Exhaustive search would exceed the configured budget.
struct InstanceTooLargeError : Error {
    using Error::Error;
};

// Mechanism applied to an instance with an incompatible valuation model.
struct ModelMismatchError : Error {
    using Error::Error;
};

// Truthful run produced zero welfare; the approximation ratio is undefined.
struct DegenerateRatioError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace tla
