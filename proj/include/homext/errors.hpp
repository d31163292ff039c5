#pragma once

#include <stdexcept>
#include <string>

namespace homext {

// Malformed or inconsistent input (parse errors, degree mismatches, precondition
// failures). The CLI maps these to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeMismatch : public InputError {
 public:
  using InputError::InputError;
};

class NotASubgroup : public InputError {
 public:
  using InputError::InputError;
};

class OutOfRange : public InputError {
 public:
  using InputError::InputError;
};

// A coset enumeration produced more cosets than the caller allowed. Either the
// bound was wrong or the membership oracle does not describe a subgroup.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (e.g. group order in brute mode) was hit. The CLI
// maps these to exit status 3.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homext
