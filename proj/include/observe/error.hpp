#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace observe {

// Domain error: malformed input, violated precondition, broken invariant.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A bounded search ran out of budget before it could decide.
// Distinct from a proved-absent result.
class SearchExhausted : public Error {
public:
    using Error::Error;
};

// A size cap on a brute-force routine was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// Text-format diagnostic with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace observe
