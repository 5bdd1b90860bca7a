#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (bad shape, out-of-range
/// coordinate, branch-cut argument, unsupported complex input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of the weight function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to meet its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A closed form that must be real produced a non-negligible imaginary part.
class BranchError : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

class ReversionDegenerate : public Error {
 public:
  using Error::Error;
};

class NonMonotoneInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace liouville
