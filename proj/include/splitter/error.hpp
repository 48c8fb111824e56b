#pragma once

#include <stdexcept>
#include <string>

namespace splitter {

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction was requested for parameters where no such set exists.
class NonexistenceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// No known criterion covers the requested parameters.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace splitter
