#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greedy_morse {

enum class ErrorKind {
    DuplicateValue,
    EmptySimplex,
    UnknownVertex,
    NotInComplex,
    IncomparableDepth,
    AdjacentTie,
    BudgetExceeded,
    CycleDetected,
    NotSmooth,
    NotCollapsible,
    InvalidInput,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DuplicateValue: return "DuplicateValue";
    case ErrorKind::EmptySimplex: return "EmptySimplex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotInComplex: return "NotInComplex";
    case ErrorKind::IncomparableDepth: return "IncomparableDepth";
    case ErrorKind::AdjacentTie: return "AdjacentTie";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NotCollapsible: return "NotCollapsible";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message)
        , kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace greedy_morse
