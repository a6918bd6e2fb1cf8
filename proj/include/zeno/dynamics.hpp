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
#include <vector>

namespace zeno::dynamics {

enum class T1Direction {
  /// Jump |0> -> |1>, the literal operator ordering of the loss term.
  toward_state_1,
  /// Jump |1> -> |0>, conventional energy loss. Default.
  toward_state_0,
};

/// Dephasing from measurement at rate gamma (coherences decay at 2 gamma)
/// plus optional Markovian population transfer at gamma_one.
struct LindbladParams {
  ModelParams model;
  double gamma_one = 0.0;
  T1Direction t1_direction = T1Direction::toward_state_0;

  void validate() const;
};

enum class Regime { underdamped, critical, overdamped };

const char* to_string(Regime r);

struct AnalyticSolution {
  Regime regime = Regime::critical;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma_mix = 0.0;
  /// gamma_plus - gamma_minus; zero unless overdamped.
  double transient_rate = 0.0;
  /// sqrt(omega_r^2 - gamma^2) when underdamped, else zero.
  double oscillation = 0.0;
};

struct DensitySeries {
  std::vector<double> times;
  std::vector<Operator> states;
};

struct ScalarSeries {
  std::vector<double> times;
  std::vector<double> values;
};

Operator lindblad_rhs(const Operator& rho, const LindbladParams& p);

/// Fixed-step classical RK4. Requires dt * max(omega, 2 gamma, gamma_one) <= 0.05
/// (step_size error otherwise). The last step is shortened so that the grid ends
/// exactly at t_final. Every `sample_every`-th state is kept, plus the endpoints.
/// A minimum eigenvalue below -1e-8 aborts with a step_size error.
DensitySeries integrate_master_equation(const LindbladParams& p, const Operator& initial,
                                        double t_final, double dt,
                                        std::size_t sample_every = 1);

/// Orthogonal drive (delta = 0): eigenrates gamma -/+ sqrt(gamma^2 - omega_r^2).
/// Throws out_of_regime for delta != 0.
AnalyticSolution analytic_solution_orthogonal(const ModelParams& model);

/// Closed-form nonselective z(t) from |1> for delta = 0.
double orthogonal_z(const ModelParams& model, double t);

/// 2 gamma omega_r^2 / (omega^2 + 4 gamma^2).
double gamma0_stabilized(const ModelParams& model);

/// Gamma_0 / (1 - 2 (Gamma_0/omega_r)^2). Throws out_of_regime when the
/// denominator is not positive.
double gamma_mix_stabilized(const ModelParams& model);

struct XiRates {
  double xi0 = 0.0;
  double xi = 0.0;
};

/// Dimensionless rates: xi0 = (g/(1+g^2)) sin(theta) with g = 2 gamma/omega,
/// xi = xi0/(1 - 2 xi0^2).
XiRates xi_rates(const ModelParams& model);

/// Measurement rate at the anti-Zeno/Zeno transition: omega_r for delta = 0,
/// omega/2 otherwise.
double critical_rate(const ModelParams& model);

/// Exact nonselective z(t) from |1> via the memory-kernel integro-differential
/// equation, integrated with trapezoidal history convolution. Requires
/// dt * max(omega, 2 gamma) <= 0.02 and at most 50000 steps.
ScalarSeries memory_kernel_z(const ModelParams& model, double t_final, double dt);

/// One step of duration dt under projective dephasing events arriving as a
/// Poisson process of rate 2 gamma. Between events the state evolves
/// unitarily; at each event the coherences are set to zero. Event times are
/// drawn exactly (exponential waiting times), so the step is exact for any dt
/// obeying 2 gamma dt <= 0.1. Offsets of events within the step are appended
/// to `event_offsets` when it is non-null. gamma_one must be zero.
Operator poisson_pulsed_step(const Operator& rho, const LindbladParams& p, double dt, Rng& rng,
                             std::vector<double>* event_offsets = nullptr);

struct PoissonConfig {
  LindbladParams params;
  double dt = 0.0;
  double t_final = 0.0;
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
};

/// Repeated poisson_pulsed_step from `initial`. The record holds the Bloch
/// vector every `record_every` steps (t > 0) and, as the readout, the number
/// of dephasing events since the previous record. Absolute event times are
/// appended to `event_times` when it is non-null.
TrajectoryRecord simulate_poisson_trajectory(const PoissonConfig& config,
                                             const QubitState& initial,
                                             std::vector<double>* event_times = nullptr);

/// Steady state of the master equation (unique when gamma_one > 0 or the
/// drive mixes the populations). Contract violation when singular.
Operator steady_state(const LindbladParams& p);

/// Fitted decay rate of the deviation of the target population from its steady
/// state, for each gamma on the grid. The target is P_1 starting from |1> for
/// decay toward |0>, and P_0 starting from |0> for the opposite direction.
std::vector<double> t1_decay_rates(const LindbladParams& p, const std::vector<double>& gamma_grid);

/// -d(rate)/d(gamma) of t1_decay_rates by central differences.
std::vector<double> zeno_response_t1(const LindbladParams& p,
                                     const std::vector<double>& gamma_grid);

}  // namespace zeno::dynamics
