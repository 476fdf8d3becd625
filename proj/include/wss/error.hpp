#pragma once

#include <stdexcept>
#include <string>

namespace wss {

/// Distance outside a channel model's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad caller input: odd packet count, malformed probability vector, etc.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A channel triple or model that fails the admissibility conditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Float mode only: a strict comparison landed inside the strictness margin.
class NumericallyAmbiguous : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver invariant that exact arithmetic guarantees was broken.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wss
