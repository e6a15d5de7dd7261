#pragma once

#include <stdexcept>
#include <string>

namespace uvbench {

enum class ErrorCode {
    invalid_argument,
    io,
    malformed_record,
    mixed_uv_presence,
    zero_area,
    degenerate_triangle,
    all_degenerate,
    uv_mismatch,
    not_a_disk,
    solver_diverged,
    remeshed_mesh,
    zero_variance,
    correspondence_failure,
    manifest_error,
    output_io_error,
    timeout,
    internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace uvbench
