#ifndef RANKONE_ERRORS_HPP
#define RANKONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rankone {

enum class ErrorKind {
  InvalidArgument,
  StageOutOfRange,
  StageMismatch,
  HeadroomViolation,
  ResourceLimit,
  Overlap,
  CountCap,
  NegativeAtomMeasure,
  BudgetExceeded,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rankone

#endif
