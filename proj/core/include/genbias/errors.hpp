#ifndef GENBIAS_ERRORS_HPP
#define GENBIAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genbias {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input: malformed files, unknown tokens, invalid parameters.
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

/// Violated internal expectation. The CLI maps these to exit code 1.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace genbias

#endif  // GENBIAS_ERRORS_HPP
