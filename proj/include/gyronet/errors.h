// Copyright 2026 The Gyronet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GYRONET_ERRORS_H
#define GYRONET_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace gyronet {

enum class ErrorCode {
    InvalidArgument,
    NumericalDomain,
    DegenerateEstimator,
    DegenerateProbe,
    InfeasibleConstraint,
    NoRoot,
    Singularity,
    InsufficientSignal,
    InvalidState,
    Io,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a process exit status.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::NumericalDomain:
            return "numerical-domain";
        case ErrorCode::DegenerateEstimator:
            return "degenerate-estimator";
        case ErrorCode::DegenerateProbe:
            return "degenerate-probe";
        case ErrorCode::InfeasibleConstraint:
            return "infeasible-constraint";
        case ErrorCode::NoRoot:
            return "no-root";
        case ErrorCode::Singularity:
            return "singularity";
        case ErrorCode::InsufficientSignal:
            return "insufficient-signal";
        case ErrorCode::InvalidState:
            return "invalid-state";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

}  // namespace gyronet

#endif
