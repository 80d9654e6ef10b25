#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotoid {

enum class ErrorKind {
    Syntax,
    DuplicateRole,
    SignMismatch,
    OddOccurrence,
    Shape,
    LimitExceeded,
    IncompleteChoice,
    InapplicableMove,
    Parity,
    LengthMismatch,
    MalformedFixture,
    Usage,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::DuplicateRole: return "DuplicateRole";
        case ErrorKind::SignMismatch: return "SignMismatch";
        case ErrorKind::OddOccurrence: return "OddOccurrence";
        case ErrorKind::Shape: return "ShapeError";
        case ErrorKind::LimitExceeded: return "LimitExceeded";
        case ErrorKind::IncompleteChoice: return "IncompleteChoice";
        case ErrorKind::InapplicableMove: return "InapplicableMove";
        case ErrorKind::Parity: return "ParityError";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::MalformedFixture: return "MalformedFixture";
        case ErrorKind::Usage: return "UsageError";
    }
    return "UnknownError";
}

/// Every library failure is reported through this type; kind() is stable for callers.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace knotoid
