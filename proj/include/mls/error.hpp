#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mls {

enum class ErrorCode {
  InvalidParams,
  BudgetExceedsUniverse,
  TooLarge,
  NoSolution,
  NotUniform,
  ParseError,
  ElementOutOfRange,
  IncompleteTournament,
  DuplicateArc,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures carry the 1-based line they were detected on (0 when the
/// failure is not tied to a line, e.g. premature end of input).
class ParseFailure : public Error {
 public:
  ParseFailure(ErrorCode code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mls
