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

#include "zeno/pulsed.hpp"

#include "zeno/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace zeno::pulsed {

namespace {

constexpr double kMinOutcomeProbability = 1e-15;

double sq(double v) { return v * v; }

}  // namespace

double PulsedConfig::dt_pulse() const {
  if (!(params.gamma() > 0.0)) {
    fail(ErrorKind::invalid_argument, "pulsed measurement needs gamma > 0 (dt = 1/gamma)");
  }
  return 1.0 / params.gamma();
}

std::pair<QubitState, double> project(const QubitState& state, int outcome) {
  if (outcome != 0 && outcome != 1) {
    fail(ErrorKind::invalid_argument, "projective outcome must be 0 or 1");
  }
  const double p1 = state.p1();
  const double probability = std::clamp(outcome == 1 ? p1 : 1.0 - p1, 0.0, 1.0);
  if (probability < kMinOutcomeProbability) {
    fail(ErrorKind::zero_probability_outcome,
         "outcome " + std::to_string(outcome) + " has zero probability");
  }
  return {outcome == 1 ? QubitState::excited() : QubitState::ground(), probability};
}

double jump_probability(const ModelParams& params) {
  if (!(params.gamma() > 0.0)) {
    fail(ErrorKind::invalid_argument, "jump probability needs gamma > 0");
  }
  return sq(std::sin(params.omega() / (2.0 * params.gamma()))) * sq(params.sin_theta());
}

StayFlip stay_flip_probabilities(const ModelParams& params) {
  const double flip = jump_probability(params);
  return {1.0 - flip, flip};
}

double analytic_z(const ModelParams& params, std::size_t n_pulses, double since_last) {
  if (!(params.gamma() > 0.0)) fail(ErrorKind::invalid_argument, "analytic_z needs gamma > 0");
  const double dt = 1.0 / params.gamma();
  if (since_last < 0.0 || since_last >= dt) {
    fail(ErrorKind::invalid_argument, "time since last pulse must lie in [0, 1/gamma)");
  }
  const double contrast = 1.0 - 2.0 * jump_probability(params);
  const double envelope =
      1.0 - 2.0 * sq(std::sin(0.5 * params.omega() * since_last)) * sq(params.sin_theta());
  return std::pow(contrast, static_cast<double>(n_pulses)) * envelope;
}

double analytic_z_at(const ModelParams& params, double t) {
  if (t < 0.0) fail(ErrorKind::invalid_argument, "time must be >= 0");
  if (!(params.gamma() > 0.0)) fail(ErrorKind::invalid_argument, "analytic_z needs gamma > 0");
  const double dt = 1.0 / params.gamma();
  auto n = static_cast<std::size_t>(std::floor(t * params.gamma()));
  double since = t - static_cast<double>(n) * dt;
  if (since >= dt) {
    ++n;
    since = 0.0;
  }
  return analytic_z(params, n, std::max(since, 0.0));
}

double gamma_mix(const ModelParams& params) {
  const double p = jump_probability(params);
  if (p >= 0.5) {
    fail(ErrorKind::out_of_regime,
         "P_jump >= 1/2: pulsed dynamics oscillate in sign, no decay rate");
  }
  return params.gamma() * -std::log1p(-2.0 * p);
}

double record_probability(const PulsedConfig& config, std::span<const int> record) {
  const StayFlip sf = stay_flip_probabilities(config.params);
  std::size_t flips = 0;
  int previous = 1;
  for (const int r : record) {
    if (r != 0 && r != 1) fail(ErrorKind::invalid_argument, "record entries must be 0 or 1");
    if (r != previous) ++flips;
    previous = r;
  }
  const auto n = static_cast<double>(record.size());
  const auto m = static_cast<double>(flips);
  return std::pow(sf.stay, n - m) * std::pow(sf.flip, m);
}

TrajectoryRecord simulate_trajectory(const PulsedConfig& config, const QubitState& initial) {
  if (!initial.is_pure()) {
    fail(ErrorKind::invalid_argument, "pulsed trajectories start from a pure state");
  }
  const double dt = config.dt_pulse();
  const Operator u = unitary_propagator(config.params, dt);

  std::vector<Operator> sub_u;
  if (config.substeps > 0) {
    sub_u.reserve(config.substeps);
    for (std::size_t k = 0; k < config.substeps; ++k) {
      sub_u.push_back(unitary_propagator(
          config.params, dt * static_cast<double>(k) / static_cast<double>(config.substeps)));
    }
  }

  TrajectoryRecord out;
  out.seed = config.seed;
  out.times.reserve(config.n_pulses);
  out.states.reserve(config.n_pulses);
  out.readouts.reserve(config.n_pulses);
  if (config.substeps > 0) {
    out.path_times.reserve(config.n_pulses * config.substeps + 1);
    out.path_states.reserve(config.n_pulses * config.substeps + 1);
  }

  Rng rng = make_rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Amplitudes psi = initial.amplitudes();
  for (std::size_t i = 0; i < config.n_pulses; ++i) {
    const double t0 = static_cast<double>(i) * dt;
    if (config.substeps > 0) {
      // k = 0 is the post-measurement state at t0 (or the initial state).
      for (std::size_t k = 0; k < config.substeps; ++k) {
        if (i > 0 && k == 0) continue;
        out.path_times.push_back(t0 + dt * static_cast<double>(k) /
                                          static_cast<double>(config.substeps));
        out.path_states.push_back(bloch_of(Amplitudes(sub_u[k] * psi)));
      }
    }
    psi = u * psi;
    const double p1 = std::norm(psi(0)) / psi.squaredNorm();
    const int r = uniform(rng) < p1 ? 1 : 0;
    psi = r == 1 ? Amplitudes(1.0, 0.0) : Amplitudes(0.0, 1.0);

    const double t = static_cast<double>(i + 1) * dt;
    out.times.push_back(t);
    out.states.push_back(bloch_of(psi));
    out.readouts.push_back(static_cast<double>(r));
    if (config.substeps > 0) {
      out.path_times.push_back(t);
      out.path_states.push_back(out.states.back());
    }
  }
  if (config.substeps > 0 && config.n_pulses == 0) {
    out.path_times.push_back(0.0);
    out.path_states.push_back(initial.bloch());
  }
  return out;
}

}  // namespace zeno::pulsed
