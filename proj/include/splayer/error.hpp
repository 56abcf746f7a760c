#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splayer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A coefficient produced a non-finite value at `x`.
class EvalError : public Error {
public:
    EvalError(double x, const std::string& message)
        : Error(message), x_(x) {}

    double x() const noexcept { return x_; }

private:
    double x_;
};

/// Invalid input parameters: bad N, mismatched mesh/problem, malformed config.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure inside a linear solve. `row` is the elimination row that failed.
class SolveError : public Error {
public:
    SolveError(std::size_t row, const std::string& message)
        : Error(message), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace splayer
