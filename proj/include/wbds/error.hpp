#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbds {

enum class ErrorCode {
  invalid_graph,
  graph_too_large,
  not_semiconnected,
  not_strongly_connected,
  invalid_choice,
  not_doubly_stochastic,
  zero_row,
  c_too_small,
  c_too_small_for_degrees,
  not_doubly_stochasticable,
  method_size_exceeded,
  parse_error,
  duplicate_edge,
  bad_weight,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Input errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, std::size_t line,
             std::size_t column)
      : Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace wbds
