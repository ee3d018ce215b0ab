#pragma once

#include <stdexcept>
#include <string>

namespace eplab {

/// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// A symbol was evaluated where it divides by a vanishing magnitude.
class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

/// Work would exceed the configured desk-scale budget.
class CostGuard : public Error {
 public:
  explicit CostGuard(const std::string& msg) : Error(msg) {}
};

/// Density left the physical range or the state became non-finite.
class BlowUp : public Error {
 public:
  explicit BlowUp(const std::string& msg) : Error(msg) {}
};

class HorizonExceeded : public Error {
 public:
  explicit HorizonExceeded(const std::string& msg) : Error(msg) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

/// Finite-difference estimates disagree under step halving.
class NumericalInstability : public Error {
 public:
  explicit NumericalInstability(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace eplab
