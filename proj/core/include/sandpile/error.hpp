#pragma once

#include <stdexcept>
#include <string>

namespace sandpile {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument does not hold (unstable input to a
// recurrence check, unsorted input to a bijection, illegal move, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed text or JSON input.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A size guard on an exhaustive search or enumeration was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// Stochastic stabilisation hit its firing cap.
class StallError : public Error {
 public:
  using Error::Error;
};

}  // namespace sandpile
