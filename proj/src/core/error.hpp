#pragma once

#include <stdexcept>
#include <string>

namespace lrs {

enum class ErrorKind {
  input,         // malformed or out-of-range arguments
  precondition,  // valid arguments outside an operation's validity window
  domain,        // parameter regime where a formula is not established
  convergence,   // iterative method failed to meet its tolerance
  empty_front,   // no distance row crossed the threshold
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorKind::convergence, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::input, what);
}

}  // namespace lrs
