#pragma once

#include <stdexcept>
#include <string>

namespace affinecert {

/// Search or enumeration budget exhausted; carries the last budget fully explored.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(const std::string& what, long explored)
        : std::runtime_error(what), explored_(explored) {}
    long explored() const { return explored_; }

  private:
    long explored_;
};

/// Interval comparison stayed indeterminate at the configured precision floor.
class PrecisionExceeded : public std::runtime_error {
  public:
    explicit PrecisionExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input; carries the 1-based line where parsing stopped.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, long line) : std::runtime_error(what), line_(line) {}
    long line() const { return line_; }

  private:
    long line_;
};

/// Serialized document has the wrong kind or an unsupported format version.
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a theorem hypothesis (global fixed point, solvable signature, ...).
class HypothesisFailure : public std::runtime_error {
  public:
    explicit HypothesisFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace affinecert
