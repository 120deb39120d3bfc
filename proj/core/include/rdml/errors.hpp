#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdml {

/// An argument violated an operation's preconditions.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal value left its documented domain.
class InvalidStateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The inner solver's objective became non-finite (learning rate too large).
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(double lambda)
        : std::runtime_error("inner solve diverged: objective became non-finite at lambda=" +
                             std::to_string(lambda)),
          lambda_(lambda) {}

    double lambda() const { return lambda_; }

private:
    double lambda_;
};

/// A text input (CSV, metric file, triplet file) could not be parsed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace rdml
