#pragma once

#include <stdexcept>
#include <string>

namespace bgg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: a precondition on arguments or configuration does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A set of node functionals is not unisolvent on its polynomial space.
class UnisolvenceFailure : public Error {
 public:
  using Error::Error;
};

class InsufficientRegularity : public Error {
 public:
  using Error::Error;
};

/// A structural property the construction relies on does not hold.
class ConditionViolation : public Error {
 public:
  ConditionViolation(std::string kind, int index, const std::string& detail)
      : Error(kind + " at index " + std::to_string(index) + ": " + detail),
        kind_(std::move(kind)),
        index_(index) {}

  const std::string& kind() const { return kind_; }
  int index() const { return index_; }

 private:
  std::string kind_;
  int index_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Another process holds the lock on an output directory.
class LockBusy : public Error {
 public:
  using Error::Error;
};

}  // namespace bgg
