#include "sceneloom/error.hpp"

namespace sceneloom {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::DegenerateMesh: return "DegenerateMesh";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::BadAxis: return "BadAxis";
    case ErrorCode::BadView: return "BadView";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::BadZoom: return "BadZoom";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadMesh: return "BadMesh";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::AuthFailure: return "AuthFailure";
    case ErrorCode::ReplayExhausted: return "ReplayExhausted";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SessionAborted: return "SessionAborted";
    case ErrorCode::BadState: return "BadState";
    }
    return "Unknown";
}

}  // namespace sceneloom
