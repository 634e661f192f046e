#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sceneloom {

enum class ErrorCode {
    DuplicateName,
    EmptyMesh,
    DegenerateMesh,
    UnknownObject,
    BadAxis,
    BadView,
    BadDirection,
    BadZoom,
    BadCount,
    NonPositiveScale,
    NonFinite,
    BadMesh,
    Io,
    ProviderUnavailable,
    GenerationFailed,
    Unreachable,
    AuthFailure,
    ReplayExhausted,
    BadConfig,
    NotFound,
    SessionAborted,
    BadState,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on kind without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sceneloom
