#pragma once

#include <stdexcept>
#include <string>

namespace zetauniv {

/// Base of every error raised by the library. `error_class()` is the
/// machine-readable tag written to records and printed by the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual const char* error_class() const noexcept = 0;
  /// Throws a copy of this error with `prefix` prepended to the message.
  [[noreturn]] virtual void rethrow_with_context(const std::string& prefix) const = 0;
};

/// Numerical failures (exit status 3 from the CLI).
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define ZETAUNIV_DEFINE_ERROR(Name, Base)                               \
  class Name : public Base {                                            \
   public:                                                              \
    using Base::Base;                                                   \
    [[nodiscard]] const char* error_class() const noexcept override {   \
      return #Name;                                                     \
    }                                                                   \
    [[noreturn]] void rethrow_with_context(                             \
        const std::string& prefix) const override {                     \
      throw Name(prefix + what());                                      \
    }                                                                   \
  };

ZETAUNIV_DEFINE_ERROR(PoleError, NumericalError)
ZETAUNIV_DEFINE_ERROR(PrecisionError, NumericalError)
ZETAUNIV_DEFINE_ERROR(ZeroProximityError, NumericalError)
ZETAUNIV_DEFINE_ERROR(DomainError, NumericalError)
ZETAUNIV_DEFINE_ERROR(OverflowError, NumericalError)
ZETAUNIV_DEFINE_ERROR(ConditioningError, NumericalError)
ZETAUNIV_DEFINE_ERROR(NoValidSampleError, NumericalError)
ZETAUNIV_DEFINE_ERROR(EmptyProfileError, NumericalError)
ZETAUNIV_DEFINE_ERROR(GeometryError, Error)
ZETAUNIV_DEFINE_ERROR(ConfigError, Error)
ZETAUNIV_DEFINE_ERROR(IoError, Error)

#undef ZETAUNIV_DEFINE_ERROR

}  // namespace zetauniv
