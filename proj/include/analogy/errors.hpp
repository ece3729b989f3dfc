#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace analogy {

// Arguments that violate an operation's preconditions (schema or domain
// mismatch, wrong dimensions, unknown feature names).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input files. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(format(source, line, what)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string msg = source;
    if (line > 0) msg += ":" + std::to_string(line);
    return msg + ": " + what;
  }

  std::size_t line_;
};

// A parallelogram score requested on a zero difference vector.
class UndefinedScore : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace analogy
