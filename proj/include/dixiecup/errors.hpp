#pragma once

#include <stdexcept>
#include <string>

namespace dixiecup {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a Case II sequence is passed to an operation that requires
// finite limit constants (L_r = infinity for these sequences).
class DichotomyError : public Error {
public:
  explicit DichotomyError(const std::string& what) : Error(what) {}
};

// Raised when a family kind does not support the requested operation.
class UnsupportedFamilyError : public Error {
public:
  explicit UnsupportedFamilyError(const std::string& what) : Error(what) {}
};

// Raised when an explicit sequence cannot be placed on either side of the
// dichotomy (no tail hint, ambiguous numeric evidence).
class UnclassifiedSequenceError : public Error {
public:
  explicit UnclassifiedSequenceError(const std::string& what) : Error(what) {}
};

// Raised when an integration cannot meet the requested tolerance within its
// evaluation budget. Carries the best estimate and the bound it did achieve.
class ToleranceError : public Error {
public:
  ToleranceError(const std::string& what, double best_estimate, double achieved_bound)
      : Error(what), best_estimate(best_estimate), achieved_bound(achieved_bound) {}
  double best_estimate;
  double achieved_bound;
};

// Raised when a request exceeds a configured resource budget
// (Monte-Carlo sample budget, oracle state-space bound).
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

}  // namespace dixiecup
