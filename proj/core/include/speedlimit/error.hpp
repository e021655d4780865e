#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace speedlimit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands that must share a dimension do not.
class DimensionError : public Error {
 public:
  DimensionError(const std::string& context, std::size_t lhs, std::size_t rhs)
      : Error(context + ": dimension mismatch (" + std::to_string(lhs) +
              " vs " + std::to_string(rhs) + ")"),
        lhs_(lhs),
        rhs_(rhs) {}

  std::size_t lhs() const { return lhs_; }
  std::size_t rhs() const { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

/// A precondition on an argument (sign, range, grid size, ...) failed.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs to a bound formula are mutually inconsistent, e.g. an overlap
/// larger than the norm it is drawn from.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel failed (eigensolver non-convergence, overflow, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration is invalid. Carries every violation found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid scenario configuration";
    for (const auto& item : items) out += "\n  - " + item;
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace speedlimit
