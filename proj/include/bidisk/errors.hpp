#pragma once

#include <stdexcept>
#include <string>

namespace bidisk {

// Exact division failed: the dividend is not in the ideal generated by the
// divisor, i.e. the input is outside the claimed decomposition form.
class NotDivisible : public std::runtime_error {
 public:
  explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

// The Gram matrix of the pencil's right-hand side stayed numerically
// singular even after regularization.
class SingularPencil : public std::runtime_error {
 public:
  explicit SingularPencil(const std::string& what) : std::runtime_error(what) {}
};

// |phi(0)| = 1 (or |psi(0)| = 1): the composition norm bound degenerates.
class OriginOnBoundary : public std::runtime_error {
 public:
  explicit OriginOnBoundary(const std::string& what)
      : std::runtime_error(what) {}
};

// A symbol required to be nonzero was identically zero.
class DegenerateSymbol : public std::runtime_error {
 public:
  explicit DegenerateSymbol(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed CLI configuration or unreadable input file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bidisk
