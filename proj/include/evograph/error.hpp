// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace evograph {

enum class ErrorCode {
    LoopEdge = 1,
    DuplicateEdge,
    Disconnected,
    OutOfRange,
    InvalidParameter,
    Parse,
    DimensionMismatch,
    IsolatedVertex,
    InvalidStep,
    InvalidRange,
    Io,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace evograph
