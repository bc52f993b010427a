#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdkit {

// Invalid or inconsistent configuration. `path` is the dotted document path
// of the offending value when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  explicit ConfigError(const std::string& message) : ConfigError(std::string{}, message) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(format(source, line, message)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line, const std::string& message) {
    std::string out = source;
    if (line != 0) out += ":" + std::to_string(line);
    return out.empty() ? message : out + ": " + message;
  }

  std::string source_;
  std::size_t line_;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hook failed during a run; carries the hook name and the iteration.
class HookError : public std::runtime_error {
 public:
  HookError(std::string hook, long iteration, const std::string& message)
      : std::runtime_error("hook '" + hook + "' failed at iteration " + std::to_string(iteration) +
                           ": " + message),
        hook_(std::move(hook)),
        iteration_(iteration) {}

  const std::string& hook() const noexcept { return hook_; }
  long iteration() const noexcept { return iteration_; }

 private:
  std::string hook_;
  long iteration_;
};

class MergeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crowdkit
