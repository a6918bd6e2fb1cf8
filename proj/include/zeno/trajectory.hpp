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

#pragma once

#include "zeno/qubit.hpp"

#include <cstdint>
#include <vector>

namespace zeno {

/// Output of a selective (measured) run. `times`, `states` and `readouts`
/// have equal length, one entry per measurement. `path_*` optionally holds a
/// finer sampling of the state between measurements, starting at t = 0.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Bloch> states;
  std::vector<double> readouts;
  std::uint64_t seed = 0;

  std::vector<double> path_times;
  std::vector<Bloch> path_states;

  std::size_t size() const noexcept { return times.size(); }
};

/// Single-pole exponential moving average of a readout stream sampled every
/// `dt`. Display-only; the raw record is never touched.
std::vector<double> exponential_filter(const std::vector<double>& values, double dt,
                                       double tau);

}  // namespace zeno
