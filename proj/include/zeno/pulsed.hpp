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
#include "zeno/random.hpp"
#include "zeno/trajectory.hpp"

#include <cstdint>
#include <span>
#include <utility>

namespace zeno::pulsed {

/// Stroboscopic projective measurement of sigma_z every dt_pulse = 1/gamma.
struct PulsedConfig {
  ModelParams params;
  std::size_t n_pulses = 0;
  std::uint64_t seed = 0;
  /// Points per interval for the unitary interpolation stored in
  /// TrajectoryRecord::path_*. Zero disables the path.
  std::size_t substeps = 20;

  /// 1/gamma. Invalid argument when gamma is zero.
  double dt_pulse() const;
};

struct StayFlip {
  double stay = 1.0;
  double flip = 0.0;
};

/// Collapse onto |outcome> (1 or 0) and the Born probability of that outcome.
/// Throws zero_probability_outcome when the probability is below 1e-15.
std::pair<QubitState, double> project(const QubitState& state, int outcome);

/// Probability of leaving the current eigenstate during one interval 1/gamma:
/// sin^2(omega / 2 gamma) sin^2(theta).
double jump_probability(const ModelParams& params);

/// (P_stay, P_flip) for one interval; P_flip is jump_probability.
StayFlip stay_flip_probabilities(const ModelParams& params);

/// Nonselective z after n_pulses measurements plus `since_last` of free
/// evolution, starting from |1>. Requires 0 <= since_last < 1/gamma.
double analytic_z(const ModelParams& params, std::size_t n_pulses, double since_last);

/// Same as analytic_z but at an arbitrary time t >= 0.
double analytic_z_at(const ModelParams& params, double t);

/// Exponential mixing rate gamma ln(1/(1 - 2 P_jump)). Throws out_of_regime
/// when P_jump >= 1/2.
double gamma_mix(const ModelParams& params);

/// Probability of a binary record (r_1..r_N) starting from |1>, counting a
/// flip whenever r_i != r_{i-1} with r_0 = 1.
double record_probability(const PulsedConfig& config, std::span<const int> record);

/// Alternates free evolution over 1/gamma and a sampled projection.
/// Requires a pure initial state.
TrajectoryRecord simulate_trajectory(const PulsedConfig& config, const QubitState& initial);

}  // namespace zeno::pulsed
