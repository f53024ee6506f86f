#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyshare {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field-core
struct InverseOfZero : Error {
    InverseOfZero() : Error("inverse of zero requested") {}
};
struct SingularMatrix : Error {
    using Error::Error;
    SingularMatrix() : Error("matrix is singular over the field") {}
};
struct NotPrime : Error {
    using Error::Error;
};

// matrix-blocks
struct IndivisibleDimension : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};

// poly-sharing
struct AlphaSamplingExhausted : Error {
    using Error::Error;
};
struct BadBasis : Error {
    using Error::Error;
};
struct NotEnoughShares : Error {
    using Error::Error;
};

// mpc-procedures
struct ParamMismatch : Error {
    using Error::Error;
};
struct BasisMismatch : Error {
    using Error::Error;
};
struct TooFewWorkers : Error {
    using Error::Error;
};

// circuit-compiler
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};
struct UnknownInput : Error {
    using Error::Error;
};

// cluster-sim
struct SubsetTooLarge : Error {
    using Error::Error;
};
struct ParametersTooLarge : Error {
    using Error::Error;
};

// cli / configuration
struct InvalidConfig : Error {
    using Error::Error;
};

}  // namespace polyshare
