// Copyright 2026 The qsvt-sim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qsvt {

enum class ErrorCode {
    invalid_input,        // malformed arguments, shapes, ranges
    degenerate_spectrum,  // near-equal singular values
    fully_thresholded,    // every singular value is at or below tau
    not_converged,        // Newton oracle failed on an occupied label
    numerical_guard,      // residual mass, norm drift, leakage guards
    io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

  private:
    ErrorCode code_;
};

/// Process exit status for an error: 2 for bad input, 3 for tripped numerical guards.
inline int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_converged:
        case ErrorCode::numerical_guard:
            return 3;
        default:
            return 2;
    }
}

}  // namespace qsvt
