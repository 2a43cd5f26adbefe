#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conceptkit {

/// Malformed or out-of-contract input (bad index, dimension mismatch, bad file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file rejected at a specific (1-based) line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Mathematically undefined request, e.g. the angle of a zero vector.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A trainer produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double last_finite_loss, int epoch)
      : std::runtime_error(what), last_finite_loss_(last_finite_loss), epoch_(epoch) {}

  /// NaN when no finite loss was seen.
  double last_finite_loss() const noexcept { return last_finite_loss_; }
  int epoch() const noexcept { return epoch_; }

 private:
  double last_finite_loss_;
  int epoch_;
};

}  // namespace conceptkit
