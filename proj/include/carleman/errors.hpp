#pragma once

#include <stdexcept>
#include <string>

namespace carleman {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable name used in the CLI's error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CARLEMAN_ERROR(Name)                                             \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  };

CARLEMAN_ERROR(PoleError)
CARLEMAN_ERROR(DomainError)
CARLEMAN_ERROR(CoincidenceError)
CARLEMAN_ERROR(RangeError)
CARLEMAN_ERROR(ConvergenceError)
CARLEMAN_ERROR(NotPositiveDefinite)
CARLEMAN_ERROR(RankDeficiency)
CARLEMAN_ERROR(DegenerateInput)
CARLEMAN_ERROR(NoConvergence)

#undef CARLEMAN_ERROR

}  // namespace carleman
