#include "rte/error.hpp"

namespace rte {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidMesh: return "invalid-mesh";
    case ErrorCode::Stability: return "stability";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::Cycle: return "cycle";
    case ErrorCode::AssumptionViolation: return "assumption-violation";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace rte
