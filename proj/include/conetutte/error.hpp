#pragma once

#include <stdexcept>
#include <string>

namespace conetutte {

// Error taxonomy shared by all modules. Codes mirror the failure modes the
// library promises to detect; everything else surfaces as Internal.
enum class ErrorCode {
    // mesh
    InvalidFace,
    NonManifoldEdge,
    NonManifoldVertex,
    MultipleBoundaryLoops,
    NotThreeConnected,
    NotDisk,
    UnreferencedVertex,
    DegenerateBoundary,
    // polygons / drawings
    NotSimple,
    AllCollinear,
    CoincidentPoints,
    NonFinite,
    // solver / weights
    NonPositiveRange,
    NonPositiveWeight,
    BoundaryMismatch,
    SingularSystem,
    // certification
    MeshMismatch,
    SourceNotEmbedding,
    RecoveryFailed,
    DegenerateSourceTriangle,
    // extension
    NotHarmonic,
    ConeConditionViolated,
    ExtensionInfeasible,
    // positive combinations
    ZeroVector,
    // continuous module
    BoundaryPoint,
    NoReflexChord,
    HypothesisViolated,
    BadBoundaryMap,
    // io / cli
    ParseError,
    IoError,
    UsageError,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace conetutte
