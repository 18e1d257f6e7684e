#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphmass {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the region where the map (or a stencil around it) is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotSpdError : public Error {
 public:
  NotSpdError() : Error("not SPD") {}
};

// A hypothesis of a mass formula does not hold (e.g. f not constant on the boundary).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace graphmass
