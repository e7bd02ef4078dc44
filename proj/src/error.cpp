#include "conetutte/error.hpp"

namespace conetutte {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidFace: return "InvalidFace";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorCode::MultipleBoundaryLoops: return "MultipleBoundaryLoops";
    case ErrorCode::NotThreeConnected: return "NotThreeConnected";
    case ErrorCode::NotDisk: return "NotDisk";
    case ErrorCode::UnreferencedVertex: return "UnreferencedVertex";
    case ErrorCode::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::AllCollinear: return "AllCollinear";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveRange: return "NonPositiveRange";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::SourceNotEmbedding: return "SourceNotEmbedding";
    case ErrorCode::RecoveryFailed: return "RecoveryFailed";
    case ErrorCode::DegenerateSourceTriangle: return "DegenerateSourceTriangle";
    case ErrorCode::NotHarmonic: return "NotHarmonic";
    case ErrorCode::ConeConditionViolated: return "ConeConditionViolated";
    case ErrorCode::ExtensionInfeasible: return "ExtensionInfeasible";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NoReflexChord: return "NoReflexChord";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BadBoundaryMap: return "BadBoundaryMap";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace conetutte
