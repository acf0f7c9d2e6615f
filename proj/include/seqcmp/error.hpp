#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqcmp {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller supplied an out-of-range or malformed argument.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An ingest configuration refers to something that does not exist.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input data. `row()` is the 1-based record number in the source.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// An operation is not valid for the current interaction state.
class StateError : public Error {
public:
    using Error::Error;
};

/// Inputs that should agree by construction do not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An input exceeds the guard limits of an exhaustive routine.
class SizeError : public Error {
public:
    using Error::Error;
};

} // namespace seqcmp
