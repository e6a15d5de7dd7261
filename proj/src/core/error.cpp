#include "core/error.hpp"

namespace uvbench {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::io: return "io";
        case ErrorCode::malformed_record: return "malformed_record";
        case ErrorCode::mixed_uv_presence: return "mixed_uv_presence";
        case ErrorCode::zero_area: return "zero_area";
        case ErrorCode::degenerate_triangle: return "degenerate_triangle";
        case ErrorCode::all_degenerate: return "all_degenerate";
        case ErrorCode::uv_mismatch: return "uv_mismatch";
        case ErrorCode::not_a_disk: return "not_a_disk";
        case ErrorCode::solver_diverged: return "solver_diverged";
        case ErrorCode::remeshed_mesh: return "remeshed_mesh";
        case ErrorCode::zero_variance: return "zero_variance";
        case ErrorCode::correspondence_failure: return "correspondence_failure";
        case ErrorCode::manifest_error: return "manifest_error";
        case ErrorCode::output_io_error: return "output_io_error";
        case ErrorCode::timeout: return "timeout";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

}  // namespace uvbench
