// errors.hpp - exception types shared across the morphfir library
#pragma once

#include <stdexcept>
#include <string>

namespace morphfir {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plan construction / configuration legality. CLI maps these to exit code 2.
struct LegalityError : Error {
    using Error::Error;
};

struct RegionTooSmall : LegalityError {
    using LegalityError::LegalityError;
};

struct DiagonalRequired : LegalityError {
    using LegalityError::LegalityError;
};

// Exact-integer datapath overflow. Signals test inputs too large, never wraps.
struct ArithmeticOverflow : Error {
    using Error::Error;
};

struct EmptyWindow : Error {
    using Error::Error;
};

struct UndefinedForBasic : Error {
    using Error::Error;
};

// Malformed or inconsistent plan/input file.
struct PlanFormatError : Error {
    using Error::Error;
};

// A materialized (file-loaded) schedule was asked beyond its horizon.
struct HorizonExceeded : Error {
    using Error::Error;
};

} // namespace morphfir
