#pragma once

#include <stdexcept>
#include <string>

namespace nlbox {

// Common base so callers can catch anything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeProbability : Error {
    using Error::Error;
};

// Carries the offending cell and its exact sum (as a "num/den" string).
struct CellNotNormalized : Error {
    int x, y;
    std::string sum;
    CellNotNormalized(int x_, int y_, std::string sum_)
        : Error("cell (" + std::to_string(x_) + "," + std::to_string(y_) +
                ") not normalized: sum = " + sum_),
          x(x_), y(y_), sum(std::move(sum_)) {}
};

struct FormulaMismatch : Error {
    using Error::Error;
};

struct MalformedSystem : Error {
    using Error::Error;
};

struct SignalingInput : Error {
    using Error::Error;
};

struct OutsideHull : Error {
    using Error::Error;
};

struct LambdaOutOfRange : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct UnknownCatalogEntry : Error {
    using Error::Error;
};

// Input that cannot be parsed at all (bad JSON, bad rational syntax, ...).
struct MalformedInput : Error {
    using Error::Error;
};

// One-shot box used twice on the same side.
struct BoxConsumed : Error {
    using Error::Error;
};

// A certificate or cross-check failed self-verification. Unreachable unless
// there is a bug; never raised by bad user input.
struct InternalCheckFailure : Error {
    using Error::Error;
};

}  // namespace nlbox
