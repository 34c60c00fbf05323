#pragma once

#include <stdexcept>
#include <string>

namespace frog {

/// Base class for all domain errors raised by the library. `code()` is the
/// stable identifier used in structured error output (e.g. "OutOfRange").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FROG_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

FROG_DEFINE_ERROR(OutOfRange);
FROG_DEFINE_ERROR(IndexError);
FROG_DEFINE_ERROR(ArityMismatch);
FROG_DEFINE_ERROR(NegativeExponent);
FROG_DEFINE_ERROR(DivisionByZero);
FROG_DEFINE_ERROR(ParseError);
FROG_DEFINE_ERROR(SearchExhausted);
FROG_DEFINE_ERROR(ResourceExhausted);
FROG_DEFINE_ERROR(InvalidArgument);

#undef FROG_DEFINE_ERROR

}  // namespace frog
