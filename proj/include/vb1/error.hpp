#pragma once

#include <stdexcept>
#include <string>

namespace vb1 {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (permutations, words, automorphisms, presentations).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition on the arguments does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A search or construction did not succeed within its bounds.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// A computed certificate failed its own verification.
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace vb1
