#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarlens {

// Base class for all toolkit errors. Subclasses map onto CLI exit codes:
// UsageError -> 1, DataError/ParseError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input data (bad records, unknown ids, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Parse failure tied to a specific line of an input stream.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& reason)
        : DataError("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

// Degenerate numerical situations: zero margins, rank-0 residual matrices,
// undefined similarities.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

} // namespace polarlens
