#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tpbvp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: parameters, configuration, grid sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a function (e.g. t outside [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression evaluation failed (domain violation or non-finite result).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Expression text could not be parsed. `offset` is a byte offset into the source.
class ParseError : public InputError {
 public:
  enum class Kind { syntax, unknown_identifier };

  ParseError(Kind kind, std::size_t offset, const std::string& message)
      : InputError("at offset " + std::to_string(offset) + ": " + message),
        kind_(kind),
        offset_(offset),
        detail_(message) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::string detail_;
};

}  // namespace tpbvp
