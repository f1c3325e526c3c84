#pragma once

#include <stdexcept>
#include <string>

namespace pmi {

// Raised for malformed arguments: size mismatches, bad degrees, bad text.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two ExtRational values with different nonzero radicands were combined.
class RadicandMismatch : public InputError {
 public:
  using InputError::InputError;
};

// An internal identity failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pmi
