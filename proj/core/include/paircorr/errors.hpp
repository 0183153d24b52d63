#pragma once

#include <stdexcept>
#include <string>

namespace paircorr {

/// Input failed a precondition (bad parameter, malformed table, ...).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured resource bound (sieve range, atom budget).
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation on a measure with zero total mass.
class EmptyMeasureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace paircorr
