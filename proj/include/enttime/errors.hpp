#pragma once

#include <stdexcept>
#include <string>

namespace enttime {

// Base of every error thrown by the library. The CLI maps the concrete type
// to its exit code (schema 2, model 3, numeric 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes disagree or exceed kMaxDim.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Model definition is invalid (non-Hermitian sum, bad cutoff, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Coherent-state truncation leaves too much probability outside the cutoff.
class TruncationError : public ModelError {
 public:
  TruncationError(const std::string& what, int suggested_n_max)
      : ModelError(what), suggested_n_max_(suggested_n_max) {}
  int suggested_n_max() const noexcept { return suggested_n_max_; }

 private:
  int suggested_n_max_;
};

// A density matrix or state vector fails its normalization contract.
class StateError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation (alpha < 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Decomposition failed, a residual check tripped, or a stencil is unstable.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A model-spec document violates its schema; path is a JSON pointer to the
// offending field.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error((path.empty() ? std::string("/") : path) + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace enttime
