#pragma once

#include <stdexcept>
#include <string>

namespace pgc {

/// Malformed graph data: loops, repeated edges, bad orientation words.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside the operation's domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algebraic precondition did not hold (e.g. d_out * d_in != 0).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A differential produced a key missing from the destination basis.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cache or interchange file could not be read back.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds the configured size limit.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgc
