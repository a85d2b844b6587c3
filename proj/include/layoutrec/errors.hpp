#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace layoutrec {

/// Malformed input text. `offset()` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A tree that violates a constructor invariant (count < 1, array length
/// mismatch, ...).
class InvalidTree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Displacement, stride, length or cost arithmetic left the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A configured size guard (max n, max flattened length, oracle limit) was hit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace layoutrec
