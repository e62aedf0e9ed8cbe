#pragma once

#include <stdexcept>
#include <string>

namespace plonka {

/// Malformed or semantically invalid user input (documents, indices, sets).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a text document, addressed by 1-based line and column.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A configured size or search cap would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant that the theory guarantees has been violated.
class DefectError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace plonka
