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
#include "zeno/dynamics.hpp"
#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

using namespace zeno;
using continuous::ContinuousConfig;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Two-sided KS statistic of `draws` against N(mean, sd).
double ks_statistic(std::vector<double> draws, double mean, double sd) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = normal_cdf((draws[i] - mean) / sd);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

double posterior_p1(const QubitState& prior, double r, double gamma, double dt) {
  const Eigen::Matrix2d k = continuous::gaussian_kraus(r, gamma, dt);
  const Operator rho = prior.density();
  const Operator post = k * rho * k.transpose();
  return std::real(post(0, 0) / post.trace());
}

}  // namespace

TEST_CASE("likelihood and Kraus operator") {
  const double g = 0.7, dt = 0.3;
  CHECK(continuous::readout_likelihood(0.0, 1, g, dt) ==
        doctest::Approx(continuous::readout_likelihood(0.0, 0, g, dt)));
  const double norm = std::sqrt(2.0 * g * dt / std::numbers::pi);
  CHECK(continuous::readout_likelihood(1.0, 1, g, dt) == doctest::Approx(norm).epsilon(1e-15));
  // Log-likelihood ratio is linear in r with slope 8 gamma dt.
  double prev = -std::numeric_limits<double>::infinity();
  for (double r = -3.0; r <= 3.0; r += 0.25) {
    const double llr = std::log(continuous::readout_likelihood(r, 1, g, dt) /
                                continuous::readout_likelihood(r, 0, g, dt));
    CHECK(llr == doctest::Approx(8.0 * g * dt * r).epsilon(1e-12));
    CHECK(llr > prev);
    prev = llr;
  }
  CHECK_THROWS_AS(continuous::gaussian_kraus(0.0, 0.0, 1.0), Error);
}

TEST_CASE("Bayes rule example") {
  // 2 gamma dt = 0.5, r = 0.5, flat prior: posterior e / (1 + e).
  const double h = 1.0 / std::sqrt(2.0);
  const QubitState prior = QubitState::pure(Amplitudes(h, h));
  const double expected = std::numbers::e / (1.0 + std::numbers::e);
  CHECK(posterior_p1(prior, 0.5, 1.0, 0.25) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.7311).epsilon(1e-4));
  const QubitState post = continuous::bayesian_update(prior, {0.5, 0}, 1.0, 0.25);
  CHECK(post.p1() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Bayesian update fixed points") {
  const QubitState e = continuous::bayesian_update(QubitState::excited(), {2.7, 0}, 1.0, 0.1);
  CHECK(e.p1() == 1.0);
  const Amplitudes a(std::sqrt(0.3), Complex(0.0, std::sqrt(0.7)));
  const QubitState s = continuous::bayesian_update(QubitState::pure(a), {0.0, 0}, 2.0, 0.05);
  CHECK(s.p1() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::arg(s.amplitudes()(1) / s.amplitudes()(0)) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(continuous::bayesian_update(QubitState::pure(a), {100.0, 0}, 1.0, 1.0), Error);
}

TEST_CASE("POVM completeness") {
  using boost::math::quadrature::gauss_kronrod;
  const double inf = std::numeric_limits<double>::infinity();
  for (double two_gdt : {0.01, 0.1, 1.0}) {
    const double g = 1.0, dt = two_gdt / 2.0;
    Eigen::Matrix2d total = Eigen::Matrix2d::Zero();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        total(i, j) = gauss_kronrod<double, 61>::integrate(
            [&](double r) {
              const Eigen::Matrix2d k = continuous::gaussian_kraus(r, g, dt);
              return (k.transpose() * k)(i, j);
            },
            -inf, inf, 15, 1e-14);
      }
    }
    CHECK((total - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("readout sampling moments") {
  const double g = 1.0, dt = 0.05;
  const std::size_t n = 100000;
  Rng rng = make_rng(17);
  for (int level : {1, 0}) {
    const QubitState s = level == 1 ? QubitState::excited() : QubitState::ground();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += continuous::sample_readout(s, g, dt, rng).value;
    const double target = level == 1 ? 1.0 : -1.0;
    CHECK(std::abs(sum / n - target) <= 3.0 * std::sqrt(1.0 / (4 * g * dt) / n));
  }
  // 4 gamma dt = 1 on an equal superposition: variance 1 + 1 = 2.
  const double h = 1.0 / std::sqrt(2.0);
  const QubitState sup = QubitState::pure(Amplitudes(h, h));
  std::vector<double> v(n);
  for (auto& x : v) x = continuous::sample_readout(sup, 1.0, 0.25, rng).value;
  double mean = 0.0, ss = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  for (double x : v) ss += (x - mean) * (x - mean);
  CHECK(std::abs(ss / (n - 1) - 2.0) / 2.0 < 0.02);
}

TEST_CASE("eigenstate readout histograms pass KS") {
  const double g = 2.0, dt = 0.01, sd = 1.0 / std::sqrt(4 * g * dt);
  const std::size_t n = 100000;
  Rng rng = make_rng(5);
  for (int level : {1, 0}) {
    const QubitState s = level == 1 ? QubitState::excited() : QubitState::ground();
    std::vector<double> v(n);
    for (auto& x : v) x = continuous::sample_readout(s, g, dt, rng).value;
    CHECK(ks_statistic(v, level == 1 ? 1.0 : -1.0, sd) < 1.63 / std::sqrt(double(n)));
  }
}

TEST_CASE("configuration bounds") {
  const ModelParams m(1.0, 0.0, 2.0);
  CHECK(ContinuousConfig::default_dt(m) == doctest::Approx(0.025));
  ContinuousConfig ok{m, 0.025, 1.0, 0, std::nullopt};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.n_steps() == 40);
  ContinuousConfig coarse{m, 0.03, 1.0, 0, std::nullopt};
  CHECK_THROWS_AS(coarse.validate(), Error);
  ContinuousConfig no_meas{ModelParams(1.0, 0.0, 0.0), 0.01, 1.0, 0, std::nullopt};
  CHECK_THROWS_AS(no_meas.validate(), Error);
}

TEST_CASE("negligible measurement reproduces Rabi oscillation") {
  const double dt = 1e-3;
  const ModelParams m(1.0, 0.0, 1e-18 / dt);
  const ContinuousConfig cfg{m, dt, 2.0 * std::numbers::pi, 1, std::nullopt};
  const TrajectoryRecord r = continuous::simulate_trajectory(cfg, QubitState::excited());
  double worst = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    worst = std::max(worst, std::abs(r.states[i].z - std::cos(r.times[i])));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("strong measurement pins the state") {
  const ModelParams m(1.0, 0.0, 20.0);
  const double dt = ContinuousConfig::default_dt(m);
  std::size_t above = 0, total = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    continuous::Stepper st(m, dt, trajectory_seed(8, s), QubitState::excited());
    while (st.time() < 10.0 - 1e-12) {
      st.step();
      above += st.z() > 0.9;
      ++total;
    }
  }
  CHECK(static_cast<double>(above) / total > 0.95);
}

TEST_CASE("innovations are white with variance 1/(4 gamma dt)") {
  const ModelParams m(1.0, 0.5, 1.0);
  const double dt = 1e-3;
  continuous::Stepper st(m, dt, 77, QubitState::excited());
  const std::size_t n = 1000000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = st.step();
    const double w = (r - st.z_prior()) * std::sqrt(4.0 * m.gamma() * dt);
    sum += w;
    sumsq += w * w;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) <= 3.0 / std::sqrt(double(n)));
  CHECK(std::abs(sumsq / n - mean * mean - 1.0) < 0.02);
}

TEST_CASE("trajectory purity") {
  const ContinuousConfig cfg{ModelParams(1.0, 2.0, 0.7), 1e-3, 20.0, 3, std::nullopt};
  const TrajectoryRecord r = continuous::simulate_trajectory(cfg, QubitState::excited());
  CHECK(r.size() == cfg.n_steps());
  for (const Bloch& b : r.states) CHECK(std::abs(b.length() - 1.0) < 1e-8);
}

TEST_CASE("record stride averages readouts") {
  const ModelParams m(1.0, 0.0, 1.0);
  ContinuousConfig fine{m, 0.01, 1.0, 9, std::nullopt, 1};
  ContinuousConfig coarse = fine;
  coarse.record_every = 5;
  const TrajectoryRecord a = continuous::simulate_trajectory(fine, QubitState::excited());
  const TrajectoryRecord b = continuous::simulate_trajectory(coarse, QubitState::excited());
  REQUIRE(b.size() == a.size() / 5);
  for (std::size_t k = 0; k < b.size(); ++k) {
    double avg = 0.0;
    for (std::size_t j = 0; j < 5; ++j) avg += a.readouts[5 * k + j];
    CHECK(b.readouts[k] == doctest::Approx(avg / 5).epsilon(1e-12));
    CHECK(b.states[k].z == a.states[5 * k + 4].z);
  }
}

TEST_CASE("SSE eigenstate and noiseless limits") {
  const ModelParams frozen(0.0, 1.0, 1.0);
  for (double dw : {-0.3, 0.0, 0.8}) {
    const QubitState s = continuous::sse_step_euler(QubitState::excited(), dw, frozen, 0.01);
    CHECK(s.p1() == doctest::Approx(1.0).epsilon(1e-15));
  }
  // gamma = 0, dW = 0: normalised first-order unitary step.
  const ModelParams m(1.0, 0.4, 0.0);
  const double dt = 1e-3;
  const Amplitudes psi(std::sqrt(0.6), std::sqrt(0.4));
  Operator h = 0.5 * m.omega_r() * pauli::x() + 0.5 * m.delta() * pauli::z();
  Amplitudes expected = psi - Complex(0, 1) * dt * (h * psi);
  expected.normalize();
  CHECK((continuous::sse_step_euler(psi, 0.0, m, dt) - expected).norm() < 1e-15);
}

TEST_CASE("SSE converges strongly toward the Bayesian trajectory") {
  // Same Brownian path drives both schemes; the Euler error shrinks like sqrt(dt).
  const ModelParams m(1.0, 0.0, 1.0);
  const double fine = 1e-4;  // 20000 fine steps reach t = 2
  const std::size_t paths = 1000, fine_steps = 20000;
  auto mean_error = [&](std::size_t stride) {
    const double dt = fine * stride;
    double acc = 0.0;
    for (std::size_t p = 0; p < paths; ++p) {
      Rng rng = make_rng(trajectory_seed(31, p));
      std::normal_distribution<double> normal(0.0, std::sqrt(fine));
      Amplitudes sse = QubitState::excited().amplitudes();
      continuous::Stepper bayes(m, dt, 0, QubitState::excited());
      for (std::size_t k = 0; k < fine_steps / stride; ++k) {
        double dw = 0.0;
        for (std::size_t j = 0; j < stride; ++j) dw += normal(rng);
        const double r = bayes.z() + dw / (2.0 * std::sqrt(m.gamma()) * dt);
        sse = continuous::sse_step_euler(sse, dw, m, dt);
        bayes.step_with_readout(r);
      }
      acc += std::abs(bloch_of(sse).z - bayes.z());
    }
    return acc / paths;
  };
  const double coarse_err = mean_error(10);
  const double fine_err = mean_error(1);
  const double ratio = coarse_err / fine_err;
  MESSAGE("strong error ratio " << ratio);
  // A few paths separate during jumps and dominate the mean; 1000 paths
  // keep the estimate within about 10% of sqrt(10).
  CHECK(std::abs(ratio - std::sqrt(10.0)) / std::sqrt(10.0) < 0.25);
}

TEST_CASE("diffusive ensemble matches the master equation") {
  const ModelParams m(1.0, 0.0, 1.0);
  const ContinuousConfig cfg{m, 0.01, 5.0, 0, std::nullopt, 10};
  const auto e = ensemble::continuous_ensemble(cfg, 10000, 2024, 1);
  for (std::size_t i = 0; i < e.times.size(); ++i) {
    const double exact = dynamics::orthogonal_z(m, e.times[i]);
    CHECK(std::abs(e.mean[i].z - exact) <= 4.0 * e.std_error[i].z + 1e-12);
  }
}
