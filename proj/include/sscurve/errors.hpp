#pragma once

#include <stdexcept>
#include <string>

namespace sscurve {

// Bad arguments: nonpositive genus, malformed polynomials, bad JSON.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Field degree or enumeration size beyond the configured limits.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation is undefined for this input (e.g. moduli bound for g < 2,
// right side not of the form sum (x R_k)^{2^{k-1}}).
class NotDefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ReducibleCover : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BetaNotAdmissible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InconsistentCounts : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedRamification : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalConsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sscurve
