// Copyright 2026 The phonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONSIM_ERRORS_HPP
#define PHONSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phonsim {

enum class ErrorCode {
  invalid_argument,
  invalid_dimension,
  dimension_mismatch,
  dispersive_singularity,
  degenerate_drive,
  frame_mismatch,
  no_unique_steady_state,
  degenerate_steady_state,
  stiffness,
  numerical_degeneracy,
  aggregation_mismatch,
  stale_steady_state,
  truncated_correlation,
  unsupported_distribution,
  overdamped_regime,
  unknown_scenario,
  config_invalid,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace phonsim

#endif
