#pragma once

#include <stdexcept>
#include <string>

namespace divcover {

/// Malformed graph document. `line` is 1-based; 0 means a document-level
/// problem (missing header, wrong edge count).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// An exhaustive oracle was asked to scan more candidates than its budget
/// allows. Shrink the instance (n, k or mu) or raise the budget.
class OracleBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No feasible cover (or feasible start population) could be produced for
/// the requested budget k.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace divcover
