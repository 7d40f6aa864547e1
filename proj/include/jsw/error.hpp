#pragma once

#include <stdexcept>
#include <string>

namespace jsw {

enum class ErrorCode {
  ParseError,            // malformed JSON text
  DuplicateKey,          // object member name repeated in source JSON
  NumberTooLarge,        // exact-decimal operation exceeds the digit budget
  UnsupportedPattern,    // lookaround, backreferences, flags, ...
  AutomatonTooLarge,     // DFA state budget exceeded
  UnresolvableRef,       // $ref target missing or external
  UnsupportedKeyword,    // keyword with validation semantics we cannot honor
  UnguardedRecursion,
  UndefinedVariable,
  UnboundVariable,
  MissingComplement,
  ExpansionBudgetExceeded,  // propertyNames pattern expansion too large
  Timeout,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::NumberTooLarge: return "NumberTooLarge";
    case ErrorCode::UnsupportedPattern: return "UnsupportedPattern";
    case ErrorCode::AutomatonTooLarge: return "AutomatonTooLarge";
    case ErrorCode::UnresolvableRef: return "UnresolvableRef";
    case ErrorCode::UnsupportedKeyword: return "UnsupportedKeyword";
    case ErrorCode::UnguardedRecursion: return "UnguardedRecursion";
    case ErrorCode::UndefinedVariable: return "UndefinedVariable";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::MissingComplement: return "MissingComplement";
    case ErrorCode::ExpansionBudgetExceeded: return "ExpansionBudgetExceeded";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace jsw
