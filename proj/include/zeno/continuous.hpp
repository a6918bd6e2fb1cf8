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
#include <optional>

namespace zeno::continuous {

/// Diffusive monitoring of sigma_z at rate gamma, discretised with step dt.
struct ContinuousConfig {
  ModelParams params;
  double dt_step = 0.0;
  double t_final = 0.0;
  std::uint64_t seed = 0;
  /// Display filter for readouts; the raw stream is always kept.
  std::optional<double> record_filter_tau;
  /// Keep every n-th step in the record. Readouts are averaged over the stride.
  std::size_t record_every = 1;

  /// min(0.05/omega, 0.05/gamma), the largest step satisfying the
  /// Trotter and weak-measurement bounds.
  static double default_dt(const ModelParams& params);

  /// Throws configuration when dt*omega > 0.05, dt*gamma > 0.05, the step
  /// count exceeds 1e9, or the fields are out of range.
  void validate() const;
  std::size_t n_steps() const;
};

struct ReadoutSample {
  double value = 0.0;
  std::size_t step = 0;
};

/// Gaussian likelihood P(r | lambda) with mean +1 (lambda = 1) or -1
/// (lambda = 0) and variance 1/(4 gamma dt).
double readout_likelihood(double r, int lambda, double gamma, double dt);

/// Kraus operator diag(sqrt P(r|1), sqrt P(r|0)). Invalid argument unless
/// gamma*dt > 0.
Eigen::Matrix2d gaussian_kraus(double r, double gamma, double dt);

/// Draw one readout from the two-Gaussian mixture weighted by (P_1, P_0).
ReadoutSample sample_readout(const QubitState& state, double gamma, double dt, Rng& rng,
                             std::size_t step = 0);

/// M_r |psi> / sqrt(P(r)). Throws numerical_underflow when P(r) < 1e-300.
QubitState bayesian_update(const QubitState& state, const ReadoutSample& r, double gamma,
                           double dt);

/// One Euler-Maruyama step of the normalised Ito stochastic Schrodinger
/// equation followed by renormalisation. Cross-check only.
QubitState sse_step_euler(const QubitState& state, double dW, const ModelParams& params,
                          double dt);

/// Raw-amplitude form of sse_step_euler for inner loops.
Amplitudes sse_step_euler(const Amplitudes& psi, double dW, const ModelParams& params,
                          double dt);

/// Steps a single diffusive trajectory: free evolution over dt, then a
/// sampled readout and the corresponding Bayesian update.
class Stepper {
 public:
  Stepper(const ModelParams& params, double dt, std::uint64_t seed, const QubitState& initial);

  /// Advance one step and return the raw readout.
  double step();
  /// Advance one step using a caller-supplied readout instead of sampling.
  void step_with_readout(double r);

  const Amplitudes& amplitudes() const noexcept { return psi_; }
  Bloch bloch() const noexcept { return bloch_of(psi_); }
  double z() const noexcept;
  /// z of the state the last readout was drawn from (after free evolution,
  /// before the update).
  double z_prior() const noexcept { return z_prior_; }
  double time() const noexcept { return static_cast<double>(steps_) * dt_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  void update(double r);

  ModelParams params_;
  double dt_;
  double gamma_dt_;
  double sigma_;
  Operator u_;
  Rng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  Amplitudes psi_;
  double z_prior_ = 0.0;
  std::size_t steps_ = 0;
};

TrajectoryRecord simulate_trajectory(const ContinuousConfig& config, const QubitState& initial);

}  // namespace zeno::continuous
