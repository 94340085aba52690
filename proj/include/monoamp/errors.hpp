#pragma once

#include <stdexcept>
#include <string>

namespace monoamp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point, block or oracle of the wrong arity was handed to an operation.
class ArityMismatch : public Error {
public:
    using Error::Error;
};

// The operation needs a materialized truth table, or the arity exceeds a cap.
class Unsupported : public Error {
public:
    using Error::Error;
};

// Parameters are outside the domain where the construction makes sense
// (e.g. a tribes recipe that yields zero tribes, or bias 0/1).
class Degenerate : public Error {
public:
    using Error::Error;
};

// Malformed input file or serialized record.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace monoamp
