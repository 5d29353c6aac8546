#pragma once

#include <stdexcept>
#include <string>

namespace rigkit {

// Raised when an exact computation would exceed its enumeration budget.
// The CLI maps this to its own exit code so scripts can tell "too big"
// apart from "bad input".
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the requested parameters leave the regime a result needs
// (e.g. mp^2 not vanishing) and the caller did not force the run.
class RegimeError : public std::runtime_error {
  public:
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rigkit
