#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlag {

// Malformed hypergraph or family parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text/JSON input that does not follow the hypergraph format.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Request exceeds a documented size limit (enumeration, grids, certification).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Program with no feasible point, or unknown battery name.
class ProgramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hyperlag
