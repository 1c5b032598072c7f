#pragma once

#include <stdexcept>
#include <string>

namespace resavg {

/// Base class for every domain error raised by the library. `kind()` is the
/// stable machine-readable name that the CLI puts in its error object.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define RESAVG_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

// Precondition violated by the caller (bad level index, bad parameter range).
RESAVG_DEFINE_ERROR(InvalidArgument)

// tower_core
RESAVG_DEFINE_ERROR(InconsistentTower)
RESAVG_DEFINE_ERROR(DegenerateLevel)
RESAVG_DEFINE_ERROR(InsufficientData)

// integer_div
RESAVG_DEFINE_ERROR(ZeroInput)

// linear_groups
RESAVG_DEFINE_ERROR(InvalidPrimePower)
RESAVG_DEFINE_ERROR(IdentityInput)
RESAVG_DEFINE_ERROR(BoundExceeded)
RESAVG_DEFINE_ERROR(CoprimalityViolation)
RESAVG_DEFINE_ERROR(InvalidTable)
RESAVG_DEFINE_ERROR(TableExhausted)
RESAVG_DEFINE_ERROR(WindowUnrealizable)

// grigorchuk
RESAVG_DEFINE_ERROR(LevelTooDeep)
RESAVG_DEFINE_ERROR(InsufficientLevels)

// file interchange
RESAVG_DEFINE_ERROR(SchemaError)

#undef RESAVG_DEFINE_ERROR

}  // namespace resavg
