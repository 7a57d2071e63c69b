#pragma once

#include <stdexcept>
#include <string>

namespace gcdh {

/// A mathematical precondition or verification failed. `residual` carries the
/// offending form or value in canonical text when one exists.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what, std::string residual = {})
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const std::string& residual() const { return residual_; }

 private:
  std::string residual_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gcdh
