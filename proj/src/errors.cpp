#include "omega/errors.hpp"

namespace omega {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyLoop: return "EMPTY_LOOP";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::AlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::WrongArity: return "WRONG_ARITY";
    case ErrorCode::NotIndexable: return "NOT_INDEXABLE";
    case ErrorCode::NotRealtime: return "NOT_REALTIME";
    case ErrorCode::WrongAlphabet: return "WRONG_ALPHABET";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN_ERROR";
}

}  // namespace omega
