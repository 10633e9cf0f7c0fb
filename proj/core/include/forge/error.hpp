#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forge {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input values or violated preconditions. The CLI maps these to exit 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. Carries the 1-based line the problem was found on.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Unreadable or unwritable files. The CLI maps these to exit 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace forge
