#pragma once

#include <chrono>
#include <optional>

#include "core/error.hpp"

namespace uvbench {

// Cooperative per-task time limit. Long-running loops poll it at coarse
// checkpoints; a default-constructed Deadline never expires.
class Deadline {
  public:
    Deadline() = default;

    static Deadline after_seconds(double seconds) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const {
        return at_.has_value() && std::chrono::steady_clock::now() >= *at_;
    }

    void check() const {
        if (expired()) raise(ErrorCode::timeout, "per-mesh time limit exceeded");
    }

  private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace uvbench
