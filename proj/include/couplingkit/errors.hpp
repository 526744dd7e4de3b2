#pragma once

#include <stdexcept>
#include <string>

namespace couplingkit {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text or file content.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Two operands are defined over different alphabets (or shapes).
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// A probability vector/matrix that is negative somewhere or does not sum to 1.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked to run above its configured size limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Transportation problem whose supplies and demands do not balance.
class UnbalancedProblem : public Error {
 public:
  using Error::Error;
};

// Marginal preconditions of the X1=X2=Y1 coupling do not hold.
class ConstraintInfeasible : public Error {
 public:
  ConstraintInfeasible(const std::string& symbol, const std::string& what)
      : Error("constraint-infeasible at " + symbol + ": " + what), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

// A coupling that fails the lemma inequality. Valid couplings never do,
// so this always signals an internal bug.
class CorruptedCoupling : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace couplingkit
