#pragma once

#include <stdexcept>
#include <string>

namespace sdft {

// Exit codes used by the command-line tool.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kContractViolation = 3,
  kBudgetExceeded = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorCode::kInvalidInput, what) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what)
      : Error(ErrorCode::kContractViolation, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error(ErrorCode::kBudgetExceeded, what) {}
};

}  // namespace sdft
