#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace cartdec {

// Base for every error the library raises on purpose. The CLI maps the
// concrete type to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (exit 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// Input outside what the algorithms here handle, e.g. an abelian plinth.
class UnsupportedInput : public InputError {
 public:
  using InputError::InputError;
};

// Generator images that do not extend to a homomorphism.
class InvalidMorphism : public InputError {
 public:
  using InputError::InputError;
};

// A resource guard refused the computation (exit 3).
class LimitError : public Error {
 public:
  using Error::Error;
};

// Shipped data failed its integrity or consistency checks.
class DataCorruption : public Error {
 public:
  using Error::Error;
};

// A recomputed quantity disagrees with what a theorem predicts (exit 1).
class TheoremViolation : public Error {
 public:
  TheoremViolation(const std::string& what, nlohmann::json witness)
      : Error(what), witness_(std::move(witness)) {}
  const nlohmann::json& witness() const { return witness_; }

 private:
  nlohmann::json witness_;
};

}  // namespace cartdec
