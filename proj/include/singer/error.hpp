#ifndef SINGER_ERROR_HPP
#define SINGER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace singer {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  InvalidInput,
  NotInSubgroup,
  CapacityExceeded,
  ShapeMismatch,
  SingularMatrix,
  NotPrimitive,
  UnsupportedFactor,
  ConstraintViolation,
  ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

} // namespace singer

#endif
