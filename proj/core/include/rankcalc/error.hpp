#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankcalc {

// Base of everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent arguments: unknown variables, cross-space
// operands, non-contingent propositions where one is required, etc.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SpaceTooLargeError : public ValidationError {
 public:
  SpaceTooLargeError(std::size_t requested, std::size_t cap);

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

// Formula syntax error; `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An NCF whose smallest rank is not 0.
class NormalizationError : public ValidationError {
 public:
  explicit NormalizationError(unsigned long long minimum);

  unsigned long long minimum() const { return minimum_; }

 private:
  unsigned long long minimum_;
};

}  // namespace rankcalc
