#pragma once

#include <stdexcept>
#include <string>

namespace besselsym {

// Argument outside the domain of a function (negative factorial, z <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A Gamma/Pochhammer pole or a divergent series at an otherwise valid grid
// point. Sweeps record these as skipped instead of failing.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Caller violated a documented precondition (grid too small, bad range).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace besselsym
