#pragma once

#include <stdexcept>
#include <string>

namespace diracqes {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Missing, extra or malformed configuration input.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Input violates a documented invariant (kappa parity, empty matrix, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Parameters outside the domain where the construction applies.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Uncancelled 1/r term after applying an operator.
class PoleError : public Error {
public:
  PoleError(const std::string& what, double residue) : Error(what), residue_(residue) {}
  double residue() const { return residue_; }

private:
  double residue_;
};

/// A gauge transformation that does not fit the operator family.
class StructureError : public Error {
public:
  using Error::Error;
};

class NoBoundState : public Error {
public:
  using Error::Error;
};

class NoAlgebraicSolution : public Error {
public:
  using Error::Error;
};

class NotQuantized : public Error {
public:
  using Error::Error;
};

class NoRootInBracket : public Error {
public:
  using Error::Error;
};

/// Iteration failed to converge or produced an inconsistent result.
class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace diracqes
