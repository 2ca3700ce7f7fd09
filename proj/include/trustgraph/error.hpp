#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustgraph {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value is outside the accepted domain (alpha, epsilon, seeds, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A node token does not name a node of the graph in use.
class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string &token)
        : Error("node not found: " + token), token_(token) {}

    const std::string &token() const noexcept { return token_; }

private:
    std::string token_;
};

/// Two score vectors (or a vector and a graph) are defined over different node sets.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Syntax error in a graph document. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string &message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace trustgraph
