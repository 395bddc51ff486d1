#pragma once

#include <stdexcept>
#include <string>

namespace aspsim {

/// Error while reading an external text format; carries the 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Iterative solver failed to reach its tolerance; carries the last residual norm.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// A requested dense computation exceeds the configured size cap.
class SizeLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace aspsim
