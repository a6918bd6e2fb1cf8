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

#include "zeno/analysis.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace zeno;
using dynamics::LindbladParams;
using dynamics::T1Direction;

namespace {

// z'' + 2 gamma z' + omega_r^2 z = 0, z(0) = 1, z'(0) = 0.
double reference_z(double omega_r, double gamma, double t) {
  const double disc = gamma * gamma - omega_r * omega_r;
  if (disc < 0.0) {
    const double nu = std::sqrt(-disc);
    return std::exp(-gamma * t) * (std::cos(nu * t) + gamma / nu * std::sin(nu * t));
  }
  if (disc == 0.0) return std::exp(-gamma * t) * (1.0 + gamma * t);
  const double root = std::sqrt(disc);
  const double gp = gamma + root, gm = gamma - root;
  return (gp * std::exp(-gm * t) - gm * std::exp(-gp * t)) / (gp - gm);
}

LindbladParams lp(double omega_r, double delta, double gamma, double gamma_one = 0.0,
                  T1Direction dir = T1Direction::toward_state_0) {
  return {ModelParams(omega_r, delta, gamma), gamma_one, dir};
}

Operator rho_of(const Bloch& b) { return QubitState::from_bloch(b).density(); }

double z_of(const Operator& rho) { return std::real(rho(0, 0) - rho(1, 1)); }

}  // namespace

TEST_CASE("master equation fixed points") {
  const Operator mixed = 0.5 * pauli::identity();
  CHECK(dynamics::lindblad_rhs(mixed, lp(1.3, 0.4, 2.0)).cwiseAbs().maxCoeff() < 1e-15);
  const Operator one = QubitState::excited().density();
  CHECK(dynamics::lindblad_rhs(one, lp(0.0, 2.0, 5.0)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("coherences dephase at 2 gamma") {
  const LindbladParams p = lp(0.0, 0.0, 0.8);
  const auto s = dynamics::integrate_master_equation(p, rho_of({0.6, 0.3, 0.0}), 5.0, 0.01, 10);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double f = std::exp(-1.6 * s.times[i]);
    CHECK(std::abs(2.0 * std::real(s.states[i](0, 1)) - 0.6 * f) < 1e-9);
  }
}

TEST_CASE("master equation closed forms") {
  SUBCASE("pure Rabi") {
    const auto s = dynamics::integrate_master_equation(lp(1.0, 0.0, 0.0),
                                                       QubitState::excited().density(), 20.0, 0.005);
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const double c = std::cos(s.times[i] / 2.0);
      CHECK(std::abs(std::real(s.states[i](0, 0)) - c * c) < 1e-8);
    }
  }
  SUBCASE("critical") {
    const auto s = dynamics::integrate_master_equation(lp(1.0, 0.0, 1.0),
                                                       QubitState::excited().density(), 10.0, 0.01);
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const double t = s.times[i];
      CHECK(std::abs(z_of(s.states[i]) - std::exp(-t) * (1.0 + t)) < 1e-6);
    }
  }
  SUBCASE("overdamped long-time slope") {
    const auto s = dynamics::integrate_master_equation(lp(1.0, 0.0, 2.0),
                                                       QubitState::excited().density(), 40.0, 0.01);
    const std::size_t a = s.times.size() - 1001, b = s.times.size() - 1;
    const double slope = std::log(z_of(s.states[b]) / z_of(s.states[a])) / (s.times[b] - s.times[a]);
    CHECK(std::abs(-slope - (2.0 - std::sqrt(3.0))) / (2.0 - std::sqrt(3.0)) < 5e-3);
  }
  SUBCASE("random parameters against the reference") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int k = 0; k < 10; ++k) {
      const double wr = u(rng), g = u(rng);
      const auto s = dynamics::integrate_master_equation(lp(wr, 0.0, g), QubitState::excited().density(),
                                                         8.0, 0.002, 50);
      for (std::size_t i = 0; i < s.times.size(); ++i) {
        CHECK(std::abs(z_of(s.states[i]) - reference_z(wr, g, s.times[i])) < 1e-8);
        CHECK(std::abs(z_of(s.states[i]) - dynamics::orthogonal_z(ModelParams(wr, 0.0, g), s.times[i])) <
              1e-8);
      }
    }
  }
}

TEST_CASE("integration grid and invariants") {
  const auto s = dynamics::integrate_master_equation(lp(1.0, 1.0, 0.5, 0.2), rho_of({0.2, 0.1, 0.9}),
                                                     1.05, 0.01, 7);
  CHECK(s.times.front() == 0.0);
  CHECK(s.times.back() == 1.05);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const LindbladParams p = lp(u(rng), u(rng) - 1.0, u(rng), u(rng) / 4,
                                k % 2 ? T1Direction::toward_state_1 : T1Direction::toward_state_0);
    const double fastest = std::max({p.model.omega(), 2 * p.model.gamma(), p.gamma_one});
    const auto r = dynamics::integrate_master_equation(p, rho_of({0.0, 0.6, 0.8}), 10.0,
                                                       0.05 / std::max(fastest, 1.0));
    for (const Operator& rho : r.states) {
      CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-12);
      CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
      CHECK(min_eigenvalue(rho) > -1e-8);
    }
  }
  CHECK_THROWS_AS(dynamics::integrate_master_equation(lp(1.0, 0.0, 2.0), rho_of({0, 0, 1}), 1.0, 0.1),
                  Error);
}

TEST_CASE("orthogonal analytic solution") {
  const auto crit = dynamics::analytic_solution_orthogonal(ModelParams(1.0, 0.0, 1.0));
  CHECK(crit.regime == dynamics::Regime::critical);
  CHECK(crit.gamma_plus == 1.0);
  CHECK(crit.gamma_minus == 1.0);
  const auto under = dynamics::analytic_solution_orthogonal(ModelParams(1.0, 0.0, 0.5));
  CHECK(under.regime == dynamics::Regime::underdamped);
  CHECK(under.gamma_mix == 0.5);
  CHECK(under.oscillation == doctest::Approx(std::sqrt(0.75)));
  const auto over = dynamics::analytic_solution_orthogonal(ModelParams(1.0, 0.0, 2.0));
  CHECK(over.regime == dynamics::Regime::overdamped);
  CHECK(over.gamma_mix == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(over.gamma_mix == doctest::Approx(0.26795).epsilon(1e-4));
  CHECK(over.transient_rate == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
  // Small-rate cancellation stays accurate.
  const auto far = dynamics::analytic_solution_orthogonal(ModelParams(1.0, 0.0, 1e8));
  CHECK(far.gamma_mix == doctest::Approx(0.5e-8).epsilon(1e-12));
  CHECK_THROWS_AS(dynamics::analytic_solution_orthogonal(ModelParams(1.0, 1.0, 1.0)), Error);
}

TEST_CASE("stabilized rates") {
  const ModelParams base(1.0, 3.0, 0.0);
  CHECK(dynamics::gamma0_stabilized(base) == 0.0);
  CHECK(dynamics::gamma0_stabilized(base.with_gamma(1e-9)) < 1e-9);
  // At the critical rate 2 gamma = omega the rate peaks at omega_r^2 / (2 omega).
  const double crit = base.omega() / 2;
  CHECK(dynamics::gamma0_stabilized(base.with_gamma(crit)) ==
        doctest::Approx(1.0 / (2.0 * base.omega())).epsilon(1e-15));
  CHECK(dynamics::gamma0_stabilized(base.with_gamma(1.0)) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(dynamics::gamma_mix_stabilized(base.with_gamma(1.0)) == doctest::Approx(7.0 / 47.0).epsilon(1e-14));
  CHECK(dynamics::gamma_mix_stabilized(base.with_gamma(1.0)) == doctest::Approx(0.14894).epsilon(1e-4));
  CHECK(dynamics::gamma_mix_stabilized(ModelParams(0.0, 3.0, 1.0)) == 0.0);
  const double fast = 50.0 * base.omega();
  CHECK(std::abs(dynamics::gamma_mix_stabilized(base.with_gamma(fast)) * 2 * fast - 1.0) < 0.01);
  // Purcell limit.
  const ModelParams purcell(1.0, 20.0, 0.05);
  const double gm = dynamics::gamma_mix_stabilized(purcell);
  CHECK(std::abs(gm - 2 * 0.05 / 400.0) / gm < 0.05);
  // Gamma_0 / omega_r <= sin(theta) / 2, so the correction factor stays below 2.
  for (double g : analysis::log_grid(0.01, 100.0, 60)) {
    const ModelParams m(1.0, 0.1, g);
    CHECK(dynamics::gamma_mix_stabilized(m) <= 2.0 * dynamics::gamma0_stabilized(m));
  }
}

TEST_CASE("stabilized rate against a master equation envelope fit") {
  const ModelParams m(1.0, 3.0, 1.0);
  const auto s = dynamics::integrate_master_equation({m}, QubitState::excited().density(), 40.0, 0.01, 5);
  std::vector<double> z;
  for (const Operator& rho : s.states) z.push_back(z_of(rho));
  const auto fit = analysis::fit_decay_envelope(s.times, z, analysis::FitMethod::log_linear_fit);
  CHECK(std::abs(fit.value - 7.0 / 47.0) / (7.0 / 47.0) < 0.05);
}

TEST_CASE("sech symmetry and turning point") {
  const ModelParams base(1.0, 3.0, 0.0);
  const double crit = dynamics::critical_rate(base);
  CHECK(crit == doctest::Approx(std::sqrt(10.0) / 2).epsilon(1e-15));
  CHECK(dynamics::critical_rate(ModelParams(2.0, 0.0, 0.0)) == 2.0);
  for (double s : {2.0, 5.0, 10.0}) {
    CHECK(std::abs(dynamics::gamma0_stabilized(base.with_gamma(s * crit)) -
                   dynamics::gamma0_stabilized(base.with_gamma(crit / s))) < 1e-12);
  }
  const std::vector<double> g = analysis::log_grid(0.05 * crit, 20 * crit, 101);
  std::vector<double> g0;
  for (double x : g) g0.push_back(dynamics::gamma0_stabilized(base.with_gamma(x)));
  int changes = 0;
  std::size_t at = 0;
  for (std::size_t i = 2; i < g.size(); ++i) {
    if ((g0[i] - g0[i - 1]) * (g0[i - 1] - g0[i - 2]) < 0.0) {
      ++changes;
      at = i - 1;
    }
  }
  CHECK(changes == 1);
  CHECK(g[at - 1] <= crit);
  CHECK(g[at + 1] >= crit);
}

TEST_CASE("dimensionless rates") {
  for (double d : {0.0, 1.0, 3.0}) {
    const ModelParams base(1.0, d, 0.0);
    const auto peak = dynamics::xi_rates(base.with_gamma(base.omega() / 2));
    CHECK(peak.xi0 == doctest::Approx(base.sin_theta() / 2).epsilon(1e-15));
    for (double f : {0.5, 0.9, 1.1, 2.0}) {
      CHECK(dynamics::xi_rates(base.with_gamma(f * base.omega() / 2)).xi0 < peak.xi0);
    }
    for (double g : {0.01, 0.1, 1.0, 5.0}) {
      const ModelParams m = base.with_gamma(g);
      CHECK(dynamics::xi_rates(m).xi0 * m.omega_r() ==
            doctest::Approx(dynamics::gamma0_stabilized(m)).epsilon(1e-14));
    }
  }
  const ModelParams m(1.0, 3.0, 1.0);
  CHECK(dynamics::xi_rates(m).xi0 == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  const auto small = dynamics::xi_rates(ModelParams(1.0, 3.0, 0.1));
  REQUIRE(small.xi0 <= 0.05);
  CHECK(std::abs(small.xi - small.xi0) / small.xi0 <= 5e-3);
  // d xi / d xi0 > 0: xi and xi0 move together along gamma.
  const ModelParams orth(1.0, 0.0, 0.0);
  const auto grid = analysis::log_grid(0.01, 0.99, 200);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto a = dynamics::xi_rates(orth.with_gamma(grid[i - 1] * 0.5));
    const auto b = dynamics::xi_rates(orth.with_gamma(grid[i] * 0.5));
    CHECK((b.xi - a.xi) * (b.xi0 - a.xi0) > 0.0);
  }
}

TEST_CASE("memory kernel") {
  // No coupling: z stays at 1.
  const auto frozen = dynamics::memory_kernel_z(ModelParams(0.0, 3.0, 1.0), 5.0, 0.005);
  for (double z : frozen.values) CHECK(z == 1.0);
  const ModelParams m(1.0, 3.0, std::sqrt(10.0) / 2);
  const double dt = 0.02 / std::max(m.omega(), 2 * m.gamma());
  const auto k = dynamics::memory_kernel_z(m, 20.0, dt);
  const auto r = dynamics::integrate_master_equation({m}, QubitState::excited().density(), 20.0, dt);
  REQUIRE(k.values.size() == r.states.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    worst = std::max(worst, std::abs(k.values[i] - z_of(r.states[i])));
  }
  CHECK(worst < 1e-3);
  CHECK_THROWS_AS(dynamics::memory_kernel_z(m, 20.0, 0.1), Error);
}

TEST_CASE("Poisson dephasing") {
  SUBCASE("no measurement is pure Rabi") {
    const dynamics::PoissonConfig cfg{lp(1.0, 0.0, 0.0), 0.01, 6.0, 3};
    const TrajectoryRecord r = dynamics::simulate_poisson_trajectory(cfg, QubitState::excited());
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(std::abs(r.states[i].z - std::cos(r.times[i])) < 1e-10);
      CHECK(r.readouts[i] == 0.0);
    }
  }
  SUBCASE("waiting times are exponential with mean 1/(2 gamma)") {
    const dynamics::PoissonConfig cfg{lp(1.0, 0.0, 1.0), 0.05, 50500.0, 21, 1000};
    std::vector<double> events;
    dynamics::simulate_poisson_trajectory(cfg, QubitState::excited(), &events);
    REQUIRE(events.size() > 100000);
    std::vector<double> gaps;
    for (std::size_t i = 1; i <= 100000; ++i) gaps.push_back(events[i] - events[i - 1]);
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      const double f = 1.0 - std::exp(-2.0 * gaps[i]);
      d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    CHECK(d < 1.63 / std::sqrt(n));
  }
  SUBCASE("average equals the master equation") {
    const dynamics::PoissonConfig cfg{lp(1.0, 0.0, 2.0), 0.025, 10.0, 0, 4};
    const auto e = ensemble::poisson_ensemble(cfg, 100000, 606, 1);
    for (std::size_t i = 0; i < e.times.size(); ++i) {
      const double exact = 0.5 * (1.0 + reference_z(1.0, 2.0, e.times[i]));
      CHECK(std::abs(e.p1[i] - exact) <= std::max(4.0 * e.std_error[i].z / 2.0, 1e-12));
      CHECK(std::abs(e.p1[i] - exact) <= 0.01);
    }
  }
  SUBCASE("rejects relaxation and coarse steps") {
    Rng rng = make_rng(1);
    const Operator rho = QubitState::excited().density();
    CHECK_THROWS_AS(dynamics::poisson_pulsed_step(rho, lp(1.0, 0.0, 1.0, 0.1), 0.01, rng), Error);
    CHECK_THROWS_AS(dynamics::poisson_pulsed_step(rho, lp(1.0, 0.0, 1.0), 0.2, rng), Error);
  }
}

TEST_CASE("T1 relaxation has no Zeno response") {
  const LindbladParams p = lp(0.0, 0.0, 1.0, 0.1);
  const std::vector<double> gammas{1.0, 2.0, 4.0};
  for (double g : gammas) {
    const auto s = dynamics::integrate_master_equation({ModelParams(0.0, 0.0, g), 0.1},
                                                       QubitState::excited().density(), 10.0, 0.005, 20);
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      CHECK(std::abs(std::real(s.states[i](0, 0)) - std::exp(-0.1 * s.times[i])) < 1e-10);
    }
  }
  for (double r : dynamics::t1_decay_rates(p, gammas)) CHECK(std::abs(r - 0.1) / 0.1 < 1e-3);
  for (double r : dynamics::zeno_response_t1(p, gammas)) CHECK(std::abs(r) < 1e-10);
  CHECK_THROWS_AS(dynamics::t1_decay_rates(lp(0.0, 0.0, 1.0), gammas), Error);
}

TEST_CASE("T1 direction and steady state") {
  const Operator to0 = dynamics::steady_state(lp(0.0, 0.0, 1.0, 0.3));
  CHECK(std::abs(to0(1, 1) - Complex(1.0)) < 1e-12);
  const Operator to1 = dynamics::steady_state(lp(0.0, 0.0, 1.0, 0.3, T1Direction::toward_state_1));
  CHECK(std::abs(to1(0, 0) - Complex(1.0)) < 1e-12);
  // Driven steady state is a fixed point of the right-hand side.
  const LindbladParams driven = lp(1.0, 0.5, 0.7, 0.2);
  CHECK(dynamics::lindblad_rhs(dynamics::steady_state(driven), driven).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(dynamics::steady_state(lp(0.0, 1.0, 1.0)), Error);
  const auto up = dynamics::t1_decay_rates(lp(0.0, 0.0, 1.0, 0.2, T1Direction::toward_state_1), {1.0, 3.0});
  for (double r : up) CHECK(std::abs(r - 0.2) / 0.2 < 1e-3);
}
