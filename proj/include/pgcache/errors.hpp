#pragma once

#include <stdexcept>
#include <string>

namespace pgcache {

// Malformed parameters or inputs (CLI exit code 2).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A serialized document that does not follow the pgcache/1 schema.
class SchemaError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Enumeration would exceed the configured resource cap (CLI exit code 3).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A delivery that cannot be decoded. For a constructed scheme this means a bug.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgcache
