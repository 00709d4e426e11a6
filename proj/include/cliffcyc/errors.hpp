#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cliffcyc {

enum class ErrorCode {
    DivisionByZero,
    LevelMismatch,
    NotAutomorphism,
    NotTwoLocal,
    NotReal,
    Undecided,
    NotUnitary,
    NotSpecialUnitary,
    NotSpecialOrthogonal,
    LevelLacksI,
    UnsupportedLevel,
    NotSpecial,
    NotInGroup,
    NotAGenerator,
    Unsynthesized,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotTwoLocal: return "NotTwoLocal";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotSpecialUnitary: return "NotSpecialUnitary";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::LevelLacksI: return "LevelLacksI";
    case ErrorCode::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorCode::NotSpecial: return "NotSpecial";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NotAGenerator: return "NotAGenerator";
    case ErrorCode::Unsynthesized: return "Unsynthesized";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Domain error: the input violates an operation's precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// A mathematical invariant failed. Always a bug, never a user error.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what)
        : std::logic_error("invariant violation: " + what) {}
};

inline void ensure(bool condition, const char* what) {
    if (!condition) throw InvariantViolation(what);
}

} // namespace cliffcyc
