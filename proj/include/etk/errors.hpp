#pragma once

#include <stdexcept>
#include <string>

namespace etk {

// Bad input data or arguments. The CLI maps this family to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& file, long line, const std::string& what)
      : InputError(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  long line() const noexcept { return line_; }

 private:
  std::string file_;
  long line_;
};

// vol(V) == 0: structural entropy is undefined.
class DegenerateGraphError : public InputError {
 public:
  using InputError::InputError;
};

// Solver failures (non-convergence, non-finite values). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace etk
