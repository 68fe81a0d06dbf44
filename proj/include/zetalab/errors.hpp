#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Base of every failure raised by the numeric kernels. `kind()` is a stable
/// machine-readable tag used in CLI error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ZETALAB_ERROR(Name)                                         \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

ZETALAB_ERROR(DomainError);
ZETALAB_ERROR(BudgetExceeded);
ZETALAB_ERROR(CoverageError);
ZETALAB_ERROR(SolverError);
ZETALAB_ERROR(DivisionDegenerate);
ZETALAB_ERROR(MissingConstant);
ZETALAB_ERROR(IllConditioned);

#undef ZETALAB_ERROR

}  // namespace zetalab
