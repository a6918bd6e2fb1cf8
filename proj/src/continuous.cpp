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

#include "zeno/continuous.hpp"

#include "zeno/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace zeno::continuous {

namespace {

constexpr double kStepBound = 0.05;
constexpr std::size_t kMaxSteps = 1'000'000'000;
constexpr double kUnderflow = 1e-300;

void require_positive_strength(double gamma, double dt) {
  if (!(gamma * dt > 0.0) || !std::isfinite(gamma * dt)) {
    fail(ErrorKind::invalid_argument, "measurement strength gamma*dt must be positive");
  }
}

}  // namespace

double ContinuousConfig::default_dt(const ModelParams& params) {
  const double fastest = std::max(params.omega(), params.gamma());
  if (!(fastest > 0.0)) return 1e-2;
  return kStepBound / fastest;
}

void ContinuousConfig::validate() const {
  if (!(dt_step > 0.0) || !std::isfinite(dt_step)) {
    fail(ErrorKind::configuration, "dt_step must be positive and finite");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    fail(ErrorKind::configuration, "t_final must be >= 0 and finite");
  }
  // Small relative slack so that default_dt itself always passes.
  constexpr double slack = 1.0 + 1e-12;
  if (dt_step * params.omega() > kStepBound * slack) {
    fail(ErrorKind::configuration, "dt_step * omega exceeds 0.05 (Trotter bound)");
  }
  if (dt_step * params.gamma() > kStepBound * slack) {
    fail(ErrorKind::configuration, "dt_step * gamma exceeds 0.05");
  }
  if (!(params.gamma() > 0.0)) {
    fail(ErrorKind::configuration, "continuous measurement needs gamma > 0");
  }
  if (record_every == 0) fail(ErrorKind::configuration, "record_every must be >= 1");
  if (t_final / dt_step > static_cast<double>(kMaxSteps)) {
    fail(ErrorKind::configuration, "step count exceeds 1e9");
  }
  if (record_filter_tau && !(*record_filter_tau > 0.0)) {
    fail(ErrorKind::configuration, "record_filter_tau must be positive");
  }
}

std::size_t ContinuousConfig::n_steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt_step));
}

double readout_likelihood(double r, int lambda, double gamma, double dt) {
  require_positive_strength(gamma, dt);
  const double mu = lambda == 1 ? 1.0 : -1.0;
  const double s = 2.0 * gamma * dt;
  return std::exp(-s * (r - mu) * (r - mu)) * std::sqrt(s / std::numbers::pi);
}

Eigen::Matrix2d gaussian_kraus(double r, double gamma, double dt) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = std::sqrt(readout_likelihood(r, 1, gamma, dt));
  m(1, 1) = std::sqrt(readout_likelihood(r, 0, gamma, dt));
  return m;
}

ReadoutSample sample_readout(const QubitState& state, double gamma, double dt, Rng& rng,
                             std::size_t step) {
  require_positive_strength(gamma, dt);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double mean = uniform(rng) < state.p1() ? 1.0 : -1.0;
  const double sigma = 1.0 / std::sqrt(4.0 * gamma * dt);
  return {mean + sigma * normal(rng), step};
}

QubitState bayesian_update(const QubitState& state, const ReadoutSample& r, double gamma,
                           double dt) {
  const Amplitudes& a = state.amplitudes();
  const double l1 = readout_likelihood(r.value, 1, gamma, dt);
  const double l0 = readout_likelihood(r.value, 0, gamma, dt);
  const double total = std::norm(a(0)) * l1 + std::norm(a(1)) * l0;
  if (!(total >= kUnderflow)) {
    fail(ErrorKind::numerical_underflow,
         "readout probability underflowed; gamma*dt is too large for this readout");
  }
  Amplitudes out(a(0) * std::sqrt(l1 / total), a(1) * std::sqrt(l0 / total));
  out.normalize();
  return QubitState::pure(out);
}

Amplitudes sse_step_euler(const Amplitudes& psi, double dW, const ModelParams& params,
                          double dt) {
  const double z = std::norm(psi(0)) - std::norm(psi(1));
  const double g = params.gamma();
  const Complex mi(0.0, -1.0);
  // H = (omega_r/2) sigma_x + (delta/2) sigma_z; (sigma_z - z) is diagonal.
  const double d1 = 1.0 - z;
  const double d0 = -1.0 - z;
  Amplitudes h;
  h(0) = 0.5 * params.delta() * psi(0) + 0.5 * params.omega_r() * psi(1);
  h(1) = 0.5 * params.omega_r() * psi(0) - 0.5 * params.delta() * psi(1);
  Amplitudes out;
  out(0) = psi(0) + (mi * h(0) - 0.5 * g * d1 * d1 * psi(0)) * dt +
           std::sqrt(g) * d1 * psi(0) * dW;
  out(1) = psi(1) + (mi * h(1) - 0.5 * g * d0 * d0 * psi(1)) * dt +
           std::sqrt(g) * d0 * psi(1) * dW;
  out.normalize();
  return out;
}

QubitState sse_step_euler(const QubitState& state, double dW, const ModelParams& params,
                          double dt) {
  if (!std::isfinite(dW)) fail(ErrorKind::invalid_argument, "dW must be finite");
  return QubitState::pure(sse_step_euler(state.amplitudes(), dW, params, dt));
}

Stepper::Stepper(const ModelParams& params, double dt, std::uint64_t seed,
                 const QubitState& initial)
    : params_(params),
      dt_(dt),
      gamma_dt_(params.gamma() * dt),
      sigma_(1.0 / std::sqrt(4.0 * params.gamma() * dt)),
      u_(unitary_propagator(params, dt)),
      rng_(make_rng(seed)),
      psi_(initial.amplitudes()) {
  require_positive_strength(params.gamma(), dt);
}

double Stepper::z() const noexcept { return std::norm(psi_(0)) - std::norm(psi_(1)); }

double Stepper::step() {
  psi_ = u_ * psi_;
  psi_.normalize();
  z_prior_ = z();
  const double p1 = std::norm(psi_(0));
  const double mean = uniform_(rng_) < p1 ? 1.0 : -1.0;
  const double r = mean + sigma_ * normal_(rng_);
  update(r);
  return r;
}

void Stepper::step_with_readout(double r) {
  psi_ = u_ * psi_;
  psi_.normalize();
  z_prior_ = z();
  update(r);
}

void Stepper::update(double r) {
  // sqrt P(r|lambda) up to a common factor; shift exponents so the larger
  // weight is exactly 1 and the update never underflows.
  const double e1 = gamma_dt_ * (r - 1.0) * (r - 1.0);
  const double e0 = gamma_dt_ * (r + 1.0) * (r + 1.0);
  const double shift = std::min(e1, e0);
  psi_(0) *= std::exp(-(e1 - shift));
  psi_(1) *= std::exp(-(e0 - shift));
  psi_.normalize();
  ++steps_;
}

TrajectoryRecord simulate_trajectory(const ContinuousConfig& config, const QubitState& initial) {
  config.validate();
  if (!initial.is_pure()) {
    fail(ErrorKind::invalid_argument, "continuous trajectories start from a pure state");
  }
  const std::size_t n = config.n_steps();
  const std::size_t stride = config.record_every;

  TrajectoryRecord out;
  out.seed = config.seed;
  out.times.reserve(n / stride + 1);
  out.states.reserve(n / stride + 1);
  out.readouts.reserve(n / stride + 1);

  Stepper stepper(config.params, config.dt_step, config.seed, initial);
  double readout_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    readout_sum += stepper.step();
    if (k % stride == 0) {
      out.times.push_back(stepper.time());
      out.states.push_back(stepper.bloch());
      out.readouts.push_back(readout_sum / static_cast<double>(stride));
      readout_sum = 0.0;
    }
  }
  return out;
}

}  // namespace zeno::continuous
