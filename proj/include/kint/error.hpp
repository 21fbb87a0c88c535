#pragma once

#include <stdexcept>
#include <string>

namespace kint {

enum class ErrorCode {
    duplicate_element,
    window_out_of_bounds,
    invalid_k,
    cap_exceeded,
    arity_mismatch,
    missing_table_entry,
    parse_error,
    incomplete_table,
    invalid_params,
    index_out_of_range,
    io_error,
    empty_optima,
    missing_objective,
};

const char* to_string(ErrorCode code);

/** Error with a stable code; what() is "<CodeName>: <detail>". */
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::duplicate_element: return "DuplicateElement";
    case ErrorCode::window_out_of_bounds: return "WindowOutOfBounds";
    case ErrorCode::invalid_k: return "InvalidK";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::missing_table_entry: return "MissingTableEntry";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::incomplete_table: return "IncompleteTable";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::empty_optima: return "EmptyOptima";
    case ErrorCode::missing_objective: return "MissingObjective";
    }
    return "Error";
}

} // namespace kint
