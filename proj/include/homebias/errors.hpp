#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace homebias {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
    Success = 0,
    Usage = 1,
    Data = 2,
    Numerical = 3,
};

/// Base for errors caused by malformed or inconsistent input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fatal ingest failure, e.g. a header lacking a required column.
class IngestError : public DataError {
public:
    using DataError::DataError;
};

/// A single row could not be parsed. Carries the 1-based line number.
class RowError : public DataError {
public:
    RowError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Season-level inconsistency (wrong number of matches per team, round overflow).
class ConsistencyError : public DataError {
public:
    using DataError::DataError;
};

/// A slice predicate selected no matches.
class EmptySliceError : public DataError {
public:
    using DataError::DataError;
};

/// Argument outside the mathematical domain of an operation (odds <= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid request from a caller: unknown model id, mismatched columns.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for numerical failures inside the fitting routines.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Design matrix is not of full column rank.
class SingularDesignError : public NumericalError {
public:
    SingularDesignError(std::vector<std::string> dependent, const std::string& what)
        : NumericalError(what), dependent_(std::move(dependent)) {}

    const std::vector<std::string>& dependent_columns() const noexcept { return dependent_; }

private:
    std::vector<std::string> dependent_;
};

}  // namespace homebias
