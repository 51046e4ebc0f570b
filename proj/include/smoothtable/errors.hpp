#pragma once

#include <stdexcept>
#include <string>

namespace smoothtable {

// Bad caller input: wrong ordering, out-of-interval parameter, malformed flag.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sieve or run configuration outside the supported ceiling.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Value outside the range a table or integer type can serve.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Mathematical domain violation (e.g. iterated log not positive).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input that does not satisfy an operation's hypotheses (e.g. n not y-smooth).
class PreconditionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource guard (pair budget, sieve ceiling) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The construction's hypotheses fail for this n; not a bug.
class WitnessUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smoothtable
