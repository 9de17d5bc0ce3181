#pragma once

#include <stdexcept>
#include <string>

namespace tsnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values, empty series, mismatched sizes.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Lock-step measure called on series of different lengths.
class LengthMismatch : public InvalidInput {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : InvalidInput("lock-step measure requires equal lengths (got " + std::to_string(a) +
                     " and " + std::to_string(b) + ")") {}
};

/// Parameter outside its documented range (k, level, generator settings).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input for which the requested quantity is undefined (constant series for COR, edgeless graph
/// for modularity).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// File missing, unreadable or unwritable.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset or cache file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsnet
