#pragma once

#include <stdexcept>
#include <string>

namespace horco {

enum class ErrorCode {
  UndeclaredSymbol,
  UnboundVariable,
  ApplicationTypeMismatch,
  NonArrowApplied,
  TypeMismatch,
  InvalidPosition,
  InternalLimit,
  NotFirstOrder,
  IllTyped,
  MalformedRule,
  SyntaxError,
  TypeInferenceAmbiguous,
  TypeError,
  DuplicateSymbol,
  CapExceeded,
  Usage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace horco
