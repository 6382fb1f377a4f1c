#pragma once

#include <stdexcept>
#include <string>

namespace drum {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidInput,    // malformed or out-of-contract input
  Parse,           // text file could not be parsed (carries a line number)
  CapExceeded,     // group too large to materialize
  BudgetExceeded,  // search/grid budget exhausted
  NotConverged,    // numerical solver failed
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, int line, const std::string& what)
      : Error(ErrorKind::Parse,
              file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }

 private:
  std::string file_;
  int line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace drum
