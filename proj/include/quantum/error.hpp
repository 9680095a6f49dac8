#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace quantum {

/// Error categories shared by every stage of the pipeline.
enum class ErrorKind {
    // ingest
    Syntax,
    XmlSyntax,
    UnsupportedXmiVersion,
    MissingProfileApplication,
    // validation
    MissingRate,
    DanglingStateRef,
    DuplicateName,
    EmptyFailureMachines,
    MixedOperatorConfig,
    UnsupportedGuard,
    InvalidTransition,
    // encoding / composition
    UnknownState,
    UnboundOperation,
    AmbiguousOperation,
    UnknownEvent,
    AttributeOutOfRange,
    // analysis
    StateSpaceLimit,
    TargetUnreachable,
    UnknownConfig,
    InvalidArgument,
    // emitted-text checking
    PrismSyntax,
    Io,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "Syntax";
        case ErrorKind::XmlSyntax: return "XmlSyntax";
        case ErrorKind::UnsupportedXmiVersion: return "UnsupportedXmiVersion";
        case ErrorKind::MissingProfileApplication: return "MissingProfileApplication";
        case ErrorKind::MissingRate: return "MissingRate";
        case ErrorKind::DanglingStateRef: return "DanglingStateRef";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::EmptyFailureMachines: return "EmptyFailureMachines";
        case ErrorKind::MixedOperatorConfig: return "MixedOperatorConfig";
        case ErrorKind::UnsupportedGuard: return "UnsupportedGuard";
        case ErrorKind::InvalidTransition: return "InvalidTransition";
        case ErrorKind::UnknownState: return "UnknownState";
        case ErrorKind::UnboundOperation: return "UnboundOperation";
        case ErrorKind::AmbiguousOperation: return "AmbiguousOperation";
        case ErrorKind::UnknownEvent: return "UnknownEvent";
        case ErrorKind::AttributeOutOfRange: return "AttributeOutOfRange";
        case ErrorKind::StateSpaceLimit: return "StateSpaceLimit";
        case ErrorKind::TargetUnreachable: return "TargetUnreachable";
        case ErrorKind::UnknownConfig: return "UnknownConfig";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::PrismSyntax: return "PrismSyntax";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string detail, int line = 0)
        : std::runtime_error(format(kind, detail, line)), kind_(kind), detail_(std::move(detail)), line_(line) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }
    /// 1-based source line, 0 when not applicable.
    int line() const noexcept { return line_; }

private:
    static std::string format(ErrorKind kind, const std::string& detail, int line) {
        std::string out = to_string(kind);
        if (line > 0) out += "(line " + std::to_string(line) + ")";
        if (!detail.empty()) out += ": " + detail;
        return out;
    }

    ErrorKind kind_;
    std::string detail_;
    int line_;
};

}  // namespace quantum
