#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zipfmix {

// Argument lies outside the mathematical domain of the function.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// The requested moment does not exist for the given exponent.
class NonFiniteMomentError : public std::runtime_error {
 public:
  explicit NonFiniteMomentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Every observation equals one; the likelihood has no interior maximum.
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A structural invariant of a data type does not hold.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// The chapter-heading pattern matched nothing.
class PatternMismatchError : public std::runtime_error {
 public:
  explicit PatternMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyInputError : public std::runtime_error {
 public:
  explicit EmptyInputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zipfmix
