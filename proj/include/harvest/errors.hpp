#pragma once

#include <stdexcept>
#include <string>

namespace harvest {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

// The requested quantity is infinite (ultraviolet divergence), not merely slow.
class Divergence : public NonConvergence {
public:
  using NonConvergence::NonConvergence;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace harvest
