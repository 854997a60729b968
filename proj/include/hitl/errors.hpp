#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hitl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition or shape mismatch (arity, empty sets, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SubjectError : public Error {
 public:
  using Error::Error;
};

class SubjectCrash : public SubjectError {
 public:
  using SubjectError::SubjectError;
};

class SubjectTimeout : public SubjectError {
 public:
  using SubjectError::SubjectError;
};

class OutputFormatError : public SubjectError {
 public:
  using SubjectError::SubjectError;
};

// The (simulated) human could not answer a query; the query is dropped.
class OracleUnavailable : public Error {
 public:
  using Error::Error;
};

class SeedNotFailing : public Error {
 public:
  using Error::Error;
};

class SessionAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace hitl
