#pragma once

#include <stdexcept>
#include <string>

namespace fracvar {

// Invalid mathematical input: order outside (0,1], gamma pole, exponent out of
// range, mismatched intervals, and similar precondition failures.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quantity was requested in a form that cannot represent it, e.g. a
// derivative whose closed form leaves the power-sum class.
class RepresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pointwise evaluation produced a non-finite value or hit a function's
// domain edge.  `location` is the offending abscissa (or byte offset for
// expression evaluation).
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double location)
        : std::runtime_error(what), location(location) {}
    double location;
};

// Trajectory fails the boundary or membership requirements of a problem.
class AdmissibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A linear system that should be positive definite is not.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text input (expression or problem file) failed to parse.  `offset` is a
// byte offset into the input; `line`/`column` are 1-based when meaningful,
// zero otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset,
               int line = 0, int column = 0)
        : std::runtime_error(what), offset(offset), line(line), column(column) {}
    std::size_t offset;
    int line;
    int column;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracvar
