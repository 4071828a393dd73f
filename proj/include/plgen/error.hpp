#pragma once

#include <stdexcept>
#include <string>

namespace plgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An id that does not name a component of the model.
class LookupError : public Error {
  public:
    using Error::Error;
};

/// Malformed input document (native model, PNML, config). `line` is 1-based, 0 when unknown.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Configuration values outside their documented domain.
class ConfigError : public Error {
  public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// Runtime failure of the token game (deadlock, runaway loop, hook failure).
class SimulationError : public Error {
  public:
    using Error::Error;
};

}  // namespace plgen
