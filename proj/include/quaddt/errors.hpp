#pragma once

#include <stdexcept>
#include <string>

namespace quaddt {

/// Base class for all quaddt errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data (grids, lanes, streams).
struct InputError : Error {
    using Error::Error;
};

/// Invalid parameters (alpha = 0, rank mismatch, bad permutation, ...).
struct ParamError : Error {
    using Error::Error;
};

/// Numerical degeneracy that violates an internal invariant. Indicates
/// corrupted inputs (e.g. overflow to inf/NaN inside the kernels); never
/// raised for well-scaled finite data.
struct InternalError : Error {
    using Error::Error;
};

/// Parse failure with source location (1-based line/column).
struct ParseError : InputError {
    ParseError(const std::string& msg, int line_, int column_)
        : InputError(msg + " (line " + std::to_string(line_) + ", column " +
                     std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}

    int line;
    int column;
};

}  // namespace quaddt
