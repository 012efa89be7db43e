#pragma once

#include <stdexcept>
#include <string>

namespace medianprime {

/// Argument outside the documented domain of an operation (n = 0, v <= 1 for
/// li, evaluation at a pole, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numeric budget (prime table size, truncation cutoff, iteration cap) was
/// not large enough to certify the requested tolerance.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid operation on a formal series (non-unit constant term for an
/// inverse, nonzero constant term for log1p/exp, mismatched truncations).
class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace medianprime
