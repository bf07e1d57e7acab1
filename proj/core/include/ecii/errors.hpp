#pragma once

#include <stdexcept>
#include <string>

namespace ecii {

/// Malformed input text (KB files, configs, expression strings, reports).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(0, what) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Well-formed input that violates a semantic rule: undeclared entities,
/// duplicate declarations, unsupported axioms, bad example sets.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecii
