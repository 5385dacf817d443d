#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace semg {

/// Invalid parameters (band edges, window plans, generator settings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A filter design that would not be numerically stable.
class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An API used against its preconditions (e.g. a filter designed for another rate).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or inconsistent input data. Carries the 1-based line when known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// A statistic that is undefined for the given input (zero variance).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Collects non-fatal messages produced along the pipeline.
struct Diagnostics {
  std::vector<std::string> messages;
  void note(std::string msg) { messages.push_back(std::move(msg)); }
  bool empty() const noexcept { return messages.empty(); }
};

inline void note(Diagnostics* diag, std::string msg) {
  if (diag) diag->note(std::move(msg));
}

}  // namespace semg
