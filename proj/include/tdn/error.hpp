#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdn {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// An operation required a non-empty frequency table.
class EmptyTableError : public Error {
public:
    using Error::Error;
    EmptyTableError() : Error("frequency table is empty") {}
};

/// A contribution count outside the permitted domain (counts must be >= 1).
class InvalidCountError : public Error {
public:
    using Error::Error;
};

/// The same contributor id appeared more than once where ids must be distinct.
class DuplicateIdError : public Error {
public:
    using Error::Error;
};

/// Metric undefined for a single-contributor table (division by zero).
class UndefinedForSingletonError : public Error {
public:
    using Error::Error;
};

/// Paired series of unequal length.
class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// A series with zero variance cannot be correlated.
class DegenerateSeriesError : public Error {
public:
    using Error::Error;
};

/// |r| = 1 makes the Fisher transform and the t statistic blow up.
class DegenerateCorrelationError : public Error {
public:
    using Error::Error;
};

/// Too few paired observations for the requested statistic.
class InsufficientNError : public Error {
public:
    using Error::Error;
};

/// A record in an ingest stream could not be used; carries the 1-based line number.
class MalformedRecordError : public Error {
public:
    MalformedRecordError(const std::string& what_arg, std::size_t line)
        : Error(what_arg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

/// A structurally invalid flat file; carries the 1-based row number.
class ParseError : public Error {
public:
    ParseError(const std::string& what_arg, std::size_t row)
        : Error(what_arg), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_ = 0;
};

/// A synthetic population specification outside its parameter domain.
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

}  // namespace tdn
