#ifndef MODALDEF_ERROR_HPP_
#define MODALDEF_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modaldef {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A formula uses a constructor outside the fragment an operation supports.
class FragmentError : public Error {
 public:
  using Error::Error;
};

// Malformed frames, models, teams, morphisms, or option values.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace modaldef

#endif  // MODALDEF_ERROR_HPP_
