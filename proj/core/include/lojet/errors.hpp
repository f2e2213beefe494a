#ifndef LOJET_ERRORS_HPP
#define LOJET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lojet {

// Syntax error from the expression parser; `position` is a byte offset
// into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Domain error during evaluation (log of nonpositive, division by zero, ...).
// The offending subexpression is attached at the deepest node that failed.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(std::string message) : std::runtime_error(std::move(message)) {}
  EvalError(std::string message, std::string node_text)
      : std::runtime_error(message + " in subexpression: " + node_text),
        node_text_(std::move(node_text)) {}
  const std::string& node_text() const { return node_text_; }
  bool has_node() const { return !node_text_.empty(); }

 private:
  std::string node_text_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when two decision paths that must agree produce contradictory
// results (e.g. a gradient certificate together with descent witnesses).
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lojet

#endif  // LOJET_ERRORS_HPP
