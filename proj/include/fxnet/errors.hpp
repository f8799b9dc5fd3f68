#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fxnet {

/// Root of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Errors caused by bad user input (files, flags, configuration).
/// The CLI maps these to exit code 2; everything else is internal.
class InputError : public Error {
public:
    using Error::Error;
};

class InvalidSample : public InputError {
public:
    using InputError::InputError;
};

class InvalidParameter : public InputError {
public:
    using InputError::InputError;
};

/// Two samples that cannot be compared (e.g. length mismatch).
class InvalidPair : public InputError {
public:
    using InputError::InputError;
};

/// A constant sample was handed to an estimator that needs variation.
class DegenerateSample : public InputError {
public:
    using InputError::InputError;
};

class ConfigurationError : public InputError {
public:
    using InputError::InputError;
};

class IngestionError : public InputError {
public:
    IngestionError(const std::string& what, std::size_t row, std::size_t column)
        : InputError(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row),
          column_(column) {}

    /// 1-based line number in the source stream (header is line 1).
    std::size_t row() const noexcept { return row_; }
    /// 1-based column index (the date column is 1).
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

}  // namespace fxnet
