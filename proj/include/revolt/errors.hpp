#pragma once

#include <stdexcept>
#include <string>

namespace revolt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a type invariant or operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Rates do not satisfy f_S > h_C and f_C > h_S.
class DominanceViolation : public Error {
 public:
  using Error::Error;
};

/// The population split is 0 or 1, where outcome classification is undefined.
class DegenerateSplit : public Error {
 public:
  using Error::Error;
};

/// A closed-form equilibrium was requested outside the parameter region where it is physical.
class RegionError : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

/// Invalid sweep/basin/CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Scenario text could not be parsed. Carries the 1-based line (0 when not
/// tied to a line) and the offending key.
class ParseError : public Error {
 public:
  ParseError(int line, std::string key, const std::string& what)
      : Error(format(line, key, what)), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(int line, const std::string& key, const std::string& what) {
    std::string msg = "scenario";
    if (line > 0) msg += " line " + std::to_string(line);
    if (!key.empty()) msg += " key '" + key + "'";
    return msg + ": " + what;
  }

  int line_;
  std::string key_;
};

}  // namespace revolt
