#ifndef DIOPH_ERRORS_HPP
#define DIOPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dioph {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Division by a ball whose interval contains zero.
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by an interval containing zero") {}
};

// A discrete decision (floor, sign, comparison) could not be certified at the
// available precision. `step` identifies where, e.g. the partial quotient
// index or the table row.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(std::size_t step, const std::string& what = "")
      : Error("precision exhausted at term " + std::to_string(step) +
              (what.empty() ? "" : ": " + what)),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Argument within the configured floor of a pole of the Dirichlet kernel.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked for more work than its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dioph

#endif  // DIOPH_ERRORS_HPP
