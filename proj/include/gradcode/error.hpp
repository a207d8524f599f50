#ifndef GRADCODE_ERROR_HPP
#define GRADCODE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gradcode {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain of the operation (wrong shape, bad range).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The parameters are well-formed but no code exists for them.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An input object failed a structural check (e.g. a matrix that is not a BIBD).
class ValidationError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace detail
}  // namespace gradcode

#endif  // GRADCODE_ERROR_HPP
