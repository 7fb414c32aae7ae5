#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sessa {

enum class ErrorCode {
    ValueAbsent,
    UnsupportedOp,
    NotWellFormed,
    Invalid,
    NotSessionAutomaton,
    UnknownLabel,
    NotClosed,
    NoBreakpoint,
    TeacherInconsistent,
    QueryBudgetExceeded,
    ScriptExhausted,
    SyntaxError,
    Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure; `line()` is 1-based, 0 when the input has no line structure.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, const std::string& message)
        : Error(ErrorCode::SyntaxError,
                line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace sessa
