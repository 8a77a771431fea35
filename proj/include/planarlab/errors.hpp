#ifndef PLANARLAB_ERRORS_HPP
#define PLANARLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace planarlab {

// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integer argument is outside its documented range.
class range_error : public error {
 public:
  using error::error;
};

// Division by zero (inverse of 0, zero divisor polynomial).
class division_by_zero : public error {
 public:
  using error::error;
};

// Caller violated an operation precondition.
class precondition_error : public error {
 public:
  using error::error;
};

// The polynomial identity the operation is built on degenerates,
// e.g. ((X+1)^t + X^t + 1) vanishes when t is a power of two.
class degenerate_input : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

// The requested instance exceeds a work or memory budget.
class capacity_error : public error {
 public:
  using error::error;
};

// Malformed polynomial text.
class parse_error : public error {
 public:
  using error::error;
};

}  // namespace planarlab

#endif  // PLANARLAB_ERRORS_HPP
