#pragma once

#include <stdexcept>
#include <string>

namespace genericlab {

// Violated operation precondition or domain invariant (CLI exit code 1).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A construction would exceed a caller-set length/stage cap (CLI exit code 1).
struct BudgetError : PreconditionError {
    explicit BudgetError(const std::string& msg) : PreconditionError(msg) {}
};

// Malformed input file or string (CLI exit code 2).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace genericlab
