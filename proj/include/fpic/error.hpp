#pragma once

#include <stdexcept>
#include <string>

namespace fpic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported image file. `field()` names the offending header
/// field (e.g. "magic", "maxval", "payload").
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed .fpic container.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Bitstream does not decode cleanly against its code table.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Caller supplied parameters outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two images (or channels) that must agree in shape do not.
class ShapeMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace fpic
