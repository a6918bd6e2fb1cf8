// Copyright 2026 The zeno-lab Authors
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

#include "zeno/error.hpp"

namespace zeno {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return 2;
    case ErrorKind::contract_violation: return 3;
    case ErrorKind::zero_probability_outcome: return 4;
    case ErrorKind::out_of_regime: return 5;
    case ErrorKind::numerical_underflow: return 6;
    case ErrorKind::configuration: return 7;
    case ErrorKind::step_size: return 8;
    case ErrorKind::insufficient_data: return 9;
    case ErrorKind::parse: return 10;
    case ErrorKind::data_integrity: return 11;
    case ErrorKind::io: return 12;
  }
  return 1;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::contract_violation: return "contract-violation";
    case ErrorKind::zero_probability_outcome: return "zero-probability-outcome";
    case ErrorKind::out_of_regime: return "out-of-regime";
    case ErrorKind::numerical_underflow: return "numerical-underflow";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::step_size: return "step-size";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::parse: return "parse";
    case ErrorKind::data_integrity: return "data-integrity";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace zeno
