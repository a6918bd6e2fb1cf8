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

#include "zeno/dynamics.hpp"

#include "zeno/analysis.hpp"
#include "zeno/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace zeno::dynamics {

namespace {

constexpr double kRk4Bound = 0.05;
constexpr double kKernelBound = 0.02;
constexpr std::size_t kKernelMaxSteps = 50000;
constexpr double kPositivityFloor = -1e-8;

Operator hamiltonian(const ModelParams& m) {
  return 0.5 * (m.omega_r() * pauli::x() + m.delta() * pauli::z());
}

Operator jump_operator(T1Direction d) {
  Operator l = Operator::Zero();
  if (d == T1Direction::toward_state_0) {
    l(1, 0) = 1.0;  // |0><1|
  } else {
    l(0, 1) = 1.0;  // |1><0|
  }
  return l;
}

struct Rhs {
  explicit Rhs(const LindbladParams& p)
      : h(hamiltonian(p.model)),
        gamma(p.model.gamma()),
        gamma_one(p.gamma_one),
        l(jump_operator(p.t1_direction)),
        ldl(l.adjoint() * l) {}

  Operator operator()(const Operator& rho) const {
    const Complex i(0.0, 1.0);
    Operator out = -i * (h * rho - rho * h);
    if (gamma != 0.0) {
      Operator dephased = rho;
      dephased(0, 1) = -rho(0, 1);
      dephased(1, 0) = -rho(1, 0);
      out += gamma * (dephased - rho);
    }
    if (gamma_one != 0.0) {
      out += gamma_one * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
  }

  Operator h;
  double gamma;
  double gamma_one;
  Operator l;
  Operator ldl;
};

Operator rk4_step(const Rhs& f, const Operator& rho, double h) {
  const Operator k1 = f(rho);
  const Operator k2 = f(rho + 0.5 * h * k1);
  const Operator k3 = f(rho + 0.5 * h * k2);
  const Operator k4 = f(rho + h * k3);
  Operator next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  // Remove round-off drift in Hermiticity.
  return 0.5 * (next + next.adjoint());
}

double fastest_rate(const LindbladParams& p) {
  return std::max({p.model.omega(), 2.0 * p.model.gamma(), p.gamma_one});
}

void check_positive(const Operator& rho, double t, double dt) {
  const double lo = min_eigenvalue(rho);
  if (lo < kPositivityFloor) {
    fail(ErrorKind::step_size, "density matrix lost positivity (min eigenvalue " +
                                   std::to_string(lo) + " at t=" + std::to_string(t) +
                                   "); retry with dt <= " + std::to_string(dt / 4.0));
  }
}

double sq(double v) { return v * v; }

}  // namespace

void LindbladParams::validate() const {
  if (!(gamma_one >= 0.0) || !std::isfinite(gamma_one)) {
    fail(ErrorKind::invalid_argument, "gamma_one must be >= 0 and finite");
  }
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::underdamped: return "underdamped";
    case Regime::critical: return "critical";
    case Regime::overdamped: return "overdamped";
  }
  return "unknown";
}

Operator lindblad_rhs(const Operator& rho, const LindbladParams& p) {
  p.validate();
  return Rhs(p)(rho);
}

DensitySeries integrate_master_equation(const LindbladParams& p, const Operator& initial,
                                        double t_final, double dt, std::size_t sample_every) {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::invalid_argument, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    fail(ErrorKind::invalid_argument, "t_final must be >= 0");
  }
  if (sample_every == 0) fail(ErrorKind::invalid_argument, "sample_every must be >= 1");
  if (dt * fastest_rate(p) > kRk4Bound * (1.0 + 1e-12)) {
    fail(ErrorKind::step_size, "dt * max(omega, 2 gamma, gamma_one) exceeds 0.05; use dt <= " +
                                   std::to_string(kRk4Bound / fastest_rate(p)));
  }
  // Validates the initial state.
  const Operator rho0 = QubitState::mixed(initial).density();

  const auto n = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  const double h = n > 0 ? t_final / static_cast<double>(n) : 0.0;
  const Rhs f(p);

  DensitySeries out;
  out.times.reserve(n / sample_every + 2);
  out.states.reserve(n / sample_every + 2);
  out.times.push_back(0.0);
  out.states.push_back(rho0);

  Operator rho = rho0;
  for (std::size_t k = 1; k <= n; ++k) {
    rho = rk4_step(f, rho, h);
    const double t = static_cast<double>(k) * h;
    check_positive(rho, t, h);
    if (k % sample_every == 0 || k == n) {
      out.times.push_back(t);
      out.states.push_back(rho);
    }
  }
  return out;
}

AnalyticSolution analytic_solution_orthogonal(const ModelParams& model) {
  if (model.delta() != 0.0) {
    fail(ErrorKind::out_of_regime,
         "orthogonal solution needs delta = 0; use the stabilized rates for delta != 0");
  }
  const double g = model.gamma();
  const double w = model.omega_r();
  AnalyticSolution s;
  const double scale = std::max(g, w);
  if (std::abs(g - w) <= 1e-12 * scale) {
    s.regime = Regime::critical;
    s.gamma_plus = s.gamma_minus = s.gamma_mix = g;
    return s;
  }
  if (g > w) {
    const double root = std::sqrt((g - w) * (g + w));
    s.regime = Regime::overdamped;
    s.gamma_plus = g + root;
    // Avoids cancellation in g - root for g >> w.
    s.gamma_minus = w * w / (g + root);
    s.gamma_mix = s.gamma_minus;
    s.transient_rate = 2.0 * root;
    return s;
  }
  s.regime = Regime::underdamped;
  s.gamma_plus = s.gamma_minus = g;
  s.gamma_mix = g;
  s.oscillation = std::sqrt((w - g) * (w + g));
  return s;
}

double orthogonal_z(const ModelParams& model, double t) {
  if (!(t >= 0.0)) fail(ErrorKind::invalid_argument, "time must be >= 0");
  const AnalyticSolution s = analytic_solution_orthogonal(model);
  const double g = model.gamma();
  switch (s.regime) {
    case Regime::critical:
      return std::exp(-g * t) * (1.0 + g * t);
    case Regime::overdamped: {
      const double big = s.transient_rate;
      return std::exp(-s.gamma_minus * t) * (1.0 - s.gamma_minus * std::expm1(-big * t) / big);
    }
    case Regime::underdamped: {
      const double w = s.oscillation;
      return std::exp(-g * t) * (std::cos(w * t) + g * std::sin(w * t) / w);
    }
  }
  return 0.0;
}

double gamma0_stabilized(const ModelParams& model) {
  const double g = model.gamma();
  const double denom = sq(model.omega()) + 4.0 * g * g;
  if (!(denom > 0.0)) return 0.0;
  return 2.0 * g * sq(model.omega_r()) / denom;
}

double gamma_mix_stabilized(const ModelParams& model) {
  const double g0 = gamma0_stabilized(model);
  if (g0 == 0.0) return 0.0;
  const double denom = 1.0 - 2.0 * sq(g0 / model.omega_r());
  if (!(denom > 0.0)) {
    fail(ErrorKind::out_of_regime,
         "1 - 2 (Gamma_0/omega_r)^2 <= 0: first-order rate expansion is invalid here");
  }
  return g0 / denom;
}

XiRates xi_rates(const ModelParams& model) {
  XiRates r;
  if (!(model.omega() > 0.0)) return r;
  const double g = 2.0 * model.gamma() / model.omega();
  r.xi0 = g / (1.0 + g * g) * model.sin_theta();
  const double denom = 1.0 - 2.0 * r.xi0 * r.xi0;
  if (!(denom > 0.0)) {
    fail(ErrorKind::out_of_regime, "1 - 2 xi0^2 <= 0: first-order rate expansion is invalid here");
  }
  r.xi = r.xi0 / denom;
  return r;
}

double critical_rate(const ModelParams& model) {
  return model.delta() == 0.0 ? model.omega_r() : 0.5 * model.omega();
}

ScalarSeries memory_kernel_z(const ModelParams& model, double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::invalid_argument, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    fail(ErrorKind::invalid_argument, "t_final must be >= 0");
  }
  const double w = model.omega();
  const double g2 = 2.0 * model.gamma();
  if (dt * std::max(w, g2) > kKernelBound * (1.0 + 1e-12)) {
    fail(ErrorKind::step_size, "dt * max(omega, 2 gamma) exceeds 0.02");
  }
  const auto n = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  if (n > kKernelMaxSteps) {
    fail(ErrorKind::configuration, "memory kernel history would exceed " +
                                       std::to_string(kKernelMaxSteps) + " steps");
  }
  const double h = n > 0 ? t_final / static_cast<double>(n) : 0.0;
  const double amp = w > 0.0 ? g2 * sq(model.omega_r()) / w : 0.0;
  const double drive = model.omega_r() * model.sin_theta();

  // K(tau) = exp(-2 gamma tau) sin(omega tau); the free-precession term of the
  // coherence enters as a forcing with the same shape.
  std::vector<double> kernel(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double tau = static_cast<double>(k) * h;
    kernel[k] = std::exp(-g2 * tau) * std::sin(w * tau);
  }

  ScalarSeries out;
  out.times.resize(n + 1);
  out.values.resize(n + 1);
  out.times[0] = 0.0;
  out.values[0] = 1.0;
  double zdot = 0.0;  // K(0) = 0
  for (std::size_t m = 1; m <= n; ++m) {
    // Trapezoid over tau in [0, t_m]; the tau = 0 end carries K(0) = 0, so the
    // unknown z_m does not appear and the scheme stays explicit.
    double conv = 0.5 * kernel[m] * out.values[0];
    for (std::size_t k = 1; k < m; ++k) conv += kernel[k] * out.values[m - k];
    conv *= h;
    const double next_zdot = -drive * kernel[m] - amp * conv;
    out.values[m] = out.values[m - 1] + 0.5 * h * (zdot + next_zdot);
    out.times[m] = static_cast<double>(m) * h;
    zdot = next_zdot;
  }
  return out;
}

Operator poisson_pulsed_step(const Operator& rho, const LindbladParams& p, double dt, Rng& rng,
                             std::vector<double>* event_offsets) {
  if (p.gamma_one != 0.0) {
    fail(ErrorKind::invalid_argument, "Poisson-pulsed dynamics do not include the T1 term");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::invalid_argument, "dt must be positive");
  const double rate = 2.0 * p.model.gamma();
  if (rate * dt > 0.1 * (1.0 + 1e-12)) {
    fail(ErrorKind::invalid_argument, "2 gamma dt must be <= 0.1");
  }
  auto evolve = [&](const Operator& r, double t) {
    const Operator u = unitary_propagator(p.model, t);
    return Operator(u * r * u.adjoint());
  };
  if (rate == 0.0) return evolve(rho, dt);

  // Memorylessness: restarting the clock at the step boundary leaves the
  // event process exactly Poisson.
  std::exponential_distribution<double> wait(rate);
  Operator out = rho;
  double elapsed = 0.0;
  for (;;) {
    const double tau = wait(rng);
    if (elapsed + tau >= dt) {
      out = evolve(out, dt - elapsed);
      break;
    }
    out = evolve(out, tau);
    out(0, 1) = 0.0;
    out(1, 0) = 0.0;
    elapsed += tau;
    if (event_offsets) event_offsets->push_back(elapsed);
  }
  return out;
}

TrajectoryRecord simulate_poisson_trajectory(const PoissonConfig& config,
                                             const QubitState& initial,
                                             std::vector<double>* event_times) {
  if (config.record_every == 0) fail(ErrorKind::invalid_argument, "record_every must be >= 1");
  if (!(config.t_final >= 0.0) || !std::isfinite(config.t_final)) {
    fail(ErrorKind::invalid_argument, "t_final must be >= 0");
  }
  if (!(config.dt > 0.0)) fail(ErrorKind::invalid_argument, "dt must be positive");
  const auto n = static_cast<std::size_t>(std::llround(config.t_final / config.dt));
  TrajectoryRecord out;
  out.seed = config.seed;
  out.times.reserve(n / config.record_every + 1);
  out.states.reserve(n / config.record_every + 1);
  out.readouts.reserve(n / config.record_every + 1);

  Rng rng = make_rng(config.seed);
  Operator rho = initial.density();
  std::vector<double> offsets;
  std::size_t events = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    offsets.clear();
    rho = poisson_pulsed_step(rho, config.params, config.dt, rng, &offsets);
    events += offsets.size();
    if (event_times) {
      const double t0 = static_cast<double>(k - 1) * config.dt;
      for (double o : offsets) event_times->push_back(t0 + o);
    }
    if (k % config.record_every == 0) {
      out.times.push_back(static_cast<double>(k) * config.dt);
      out.states.push_back(bloch_of(rho));
      out.readouts.push_back(static_cast<double>(events));
      events = 0;
    }
  }
  return out;
}

Operator steady_state(const LindbladParams& p) {
  p.validate();
  const Rhs f(p);
  // The generator is affine on the Bloch vector: v' = M v + b.
  auto rate = [&](const Bloch& v) { return bloch_of(Operator(f(QubitState::from_bloch(v).density()))); };
  auto as_vec = [](const Bloch& b) { return Eigen::Vector3d(b.x, b.y, b.z); };
  const Eigen::Vector3d b = as_vec(rate({0.0, 0.0, 0.0}));
  Eigen::Matrix3d m;
  m.col(0) = as_vec(rate({1.0, 0.0, 0.0})) - b;
  m.col(1) = as_vec(rate({0.0, 1.0, 0.0})) - b;
  m.col(2) = as_vec(rate({0.0, 0.0, 1.0})) - b;
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) {
    fail(ErrorKind::contract_violation, "master equation has no unique steady state");
  }
  const Eigen::Vector3d v = lu.solve(-b);
  Operator rho;
  rho(0, 0) = 0.5 * (1.0 + v(2));
  rho(1, 1) = 0.5 * (1.0 - v(2));
  rho(1, 0) = 0.5 * Complex(v(0), v(1));
  rho(0, 1) = std::conj(rho(1, 0));
  return rho;
}

std::vector<double> t1_decay_rates(const LindbladParams& p, const std::vector<double>& gamma_grid) {
  p.validate();
  if (!(p.gamma_one > 0.0)) fail(ErrorKind::invalid_argument, "gamma_one must be > 0");
  if (gamma_grid.empty()) fail(ErrorKind::invalid_argument, "empty gamma grid");
  double g_max = 0.0;
  for (double g : gamma_grid) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      fail(ErrorKind::invalid_argument, "gamma grid must be positive");
    }
    g_max = std::max(g_max, g);
  }
  // One step size for the whole grid so that grid points differ only in gamma.
  const double dt = 0.02 / std::max({p.model.omega(), 2.0 * g_max, p.gamma_one});
  constexpr std::size_t max_steps = 2'000'000;
  const bool target_1 = p.t1_direction == T1Direction::toward_state_0;

  std::vector<double> rates;
  rates.reserve(gamma_grid.size());
  for (double g : gamma_grid) {
    LindbladParams q = p;
    q.model = p.model.with_gamma(g);
    const Operator ss = steady_state(q);
    const double target_ss = std::real(target_1 ? ss(0, 0) : ss(1, 1));
    Operator rho = target_1 ? QubitState::excited().density() : QubitState::ground().density();
    const double span = 1.0 - target_ss;
    if (std::abs(span) < 1e-9) {
      fail(ErrorKind::insufficient_data, "initial population already equals its steady state");
    }
    const Rhs f(q);
    std::vector<double> times{0.0};
    std::vector<double> dev{1.0};
    for (std::size_t k = 1; std::abs(dev.back()) >= 0.04; ++k) {
      if (k > max_steps) {
        fail(ErrorKind::insufficient_data, "population did not relax within the step budget");
      }
      rho = rk4_step(f, rho, dt);
      const double pop = std::real(target_1 ? rho(0, 0) : rho(1, 1));
      times.push_back(static_cast<double>(k) * dt);
      dev.push_back((pop - target_ss) / span);
    }
    rates.push_back(
        analysis::fit_decay_envelope(times, dev, analysis::FitMethod::log_linear_fit).value);
  }
  return rates;
}

std::vector<double> zeno_response_t1(const LindbladParams& p,
                                     const std::vector<double>& gamma_grid) {
  const std::vector<double> rates = t1_decay_rates(p, gamma_grid);
  std::vector<double> d = analysis::derivative_on_grid(gamma_grid, rates);
  for (double& v : d) v = -v;
  return d;
}

}  // namespace zeno::dynamics
