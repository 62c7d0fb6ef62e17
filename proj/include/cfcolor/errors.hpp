#pragma once

#include <stdexcept>
#include <string>

namespace cfcolor {

// Caller supplied something outside an operation's domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computed certificate contradicts a theorem it is supposed to witness.
// Seeing one of these means an arithmetic bug, never bad input.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An exact search ran out of its node/state budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InconsistencyError(what);
}

}  // namespace cfcolor
