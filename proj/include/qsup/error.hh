/* error.hh -- exception types shared across the library */

#ifndef QSUP_ERROR_HH
#define QSUP_ERROR_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsup {

/// Base class of all library errors. The CLI maps any of these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems in an automaton description: nondeterminism,
/// dangling state/event references, missing initial state.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two automata passed to a binary operation do not share the exact same
/// alphabet (event names and controllability flags).
class AlphabetError : public Error {
public:
    using Error::Error;
};

/// A required language containment does not hold; carries one string
/// (dot-joined event names) that witnesses the violation.
class ContainmentError : public Error {
public:
    ContainmentError(const std::string& what, std::string witness)
        : Error(what), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Bound-map problems for the heterogeneous operations: empty marker
/// support, or bound keys that do not cover the support exactly.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// An oracle enumeration would exceed its configured cap.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Text-format errors with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace qsup

#endif
