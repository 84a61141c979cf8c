#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

// User-facing failures: bad input, violated preconditions. CLI exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A normal-form transformation was requested on a matrix outside the
// hypotheses of the corresponding existence statement.
class HypothesisFailure : public Error {
public:
    using Error::Error;
};

// The differential ideal became the unit ideal (a nonzero constant appeared).
class InconsistentSystem : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// The separant of the pivot equation vanishes (or cannot be certified not to
// vanish) on the component; the caller should build a Ritt pencil for
// (pivot, var) instead of dividing.
class DegenerateSituation : public Error {
public:
    DegenerateSituation(const std::string& msg, std::size_t pivot, std::size_t var)
        : Error(msg), pivot_(pivot), var_(var) {}

    std::size_t pivot() const { return pivot_; }
    std::size_t var() const { return var_; }

private:
    std::size_t pivot_;
    std::size_t var_;
};

// Something that a proof guarantees did not happen. Either a bug or a
// counterexample; never a user error. CLI exit code 2.
class InternalInvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace diffalg
