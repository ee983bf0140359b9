#pragma once

#include <stdexcept>
#include <string>

namespace cgvrp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument values (ranges, counts, flag combinations).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Malformed instance / config files; message carries the offending field path.
class SchemaError : public Error {
public:
    using Error::Error;
};

// A model has no feasible solution (uncovered customer, no exact cover, ...).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// Input exceeds a hard size guard (brute-force enumeration, statevector cap).
class GuardError : public Error {
public:
    using Error::Error;
};

// Mismatched vector/operator dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

} // namespace cgvrp
