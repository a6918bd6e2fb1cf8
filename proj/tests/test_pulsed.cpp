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

#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"
#include "zeno/pulsed.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace zeno;
using std::numbers::pi;

namespace {

// Kraus-chain probability of a record: free evolution then projection, repeated.
double kraus_chain_probability(const ModelParams& m, const std::vector<int>& record) {
  Operator u = unitary_propagator(m, 1.0 / m.gamma());
  Amplitudes psi(1.0, 0.0);
  for (int r : record) {
    psi = u * psi;
    Amplitudes proj = Amplitudes::Zero();
    const int idx = r == 1 ? 0 : 1;
    proj(idx) = psi(idx);
    psi = proj;  // unnormalised: the norm carries the probability
  }
  return psi.squaredNorm();
}

// Delta = 0: z after N pulses is 2 P(even number of flips) - 1.
double even_flip_z(double p_flip, std::size_t n) {
  double even = 0.0;
  for (std::size_t k = 0; k <= n; k += 2) {
    even += std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
            std::pow(p_flip, k) * std::pow(1.0 - p_flip, n - k);
  }
  return 2.0 * even - 1.0;
}

int flips_in(const TrajectoryRecord& r) {
  int flips = 0;
  double prev = 1.0;
  for (double v : r.readouts) {
    if (v != prev) ++flips;
    prev = v;
  }
  return flips;
}

}  // namespace

TEST_CASE("projection examples") {
  auto [s1, p1] = pulsed::project(QubitState::excited(), 1);
  CHECK(p1 == 1.0);
  CHECK(s1.p1() == 1.0);

  const double h = 1.0 / std::sqrt(2.0);
  auto [s0, p0] = pulsed::project(QubitState::pure(Amplitudes(h, h)), 0);
  CHECK(p0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s0.p1() == 0.0);

  const Amplitudes a(std::cos(pi / 8), Complex(0, -std::sin(pi / 8)));
  auto [s2, p2] = pulsed::project(QubitState::pure(a), 0);
  CHECK(p2 == doctest::Approx(std::sin(pi / 8) * std::sin(pi / 8)).epsilon(1e-14));
  CHECK(p2 == doctest::Approx(0.14645).epsilon(1e-4));
  CHECK(s2.p1() == 0.0);

  CHECK_THROWS_AS(pulsed::project(QubitState::excited(), 0), Error);
  CHECK_THROWS_AS(pulsed::project(QubitState::excited(), 2), Error);
}

TEST_CASE("stay and flip probabilities") {
  CHECK(pulsed::stay_flip_probabilities(ModelParams(pi, 0.0, 1.0)).stay < 1e-15);
  CHECK(pulsed::stay_flip_probabilities(ModelParams(pi / 2, 0.0, 1.0)).stay ==
        doctest::Approx(0.5).epsilon(1e-15));
  const double flip = pulsed::stay_flip_probabilities(ModelParams(0.1, 0.0, 1.0)).flip;
  CHECK(flip == doctest::Approx(std::sin(0.05) * std::sin(0.05)).epsilon(1e-14));
  // Relative gap to the asymptote (omega_r/2 gamma)^2 is x^2/3 = 8.3e-4 at x = 0.05.
  CHECK(std::abs(flip - 2.5e-3) / 2.5e-3 < 1e-3);
  CHECK(std::abs(flip - 2.5e-3) / 2.5e-3 == doctest::Approx(0.05 * 0.05 / 3).epsilon(1e-2));
}

TEST_CASE("jump probability") {
  for (double g : {0.3, 1.0, 7.0}) {
    const ModelParams m(1.0, 0.0, g);
    CHECK(pulsed::jump_probability(m) == pulsed::stay_flip_probabilities(m).flip);
  }
  for (double d : {0.0, 3.0}) {
    const ModelParams base(1.0, d, 0.0);
    CHECK(pulsed::jump_probability(base.with_gamma(base.omega() / (2 * pi))) < 1e-30);
  }
  const ModelParams base(1.0, 3.0, 0.0);
  CHECK(pulsed::jump_probability(base.with_gamma(base.omega() / pi)) ==
        doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("analytic z examples") {
  CHECK(pulsed::analytic_z(ModelParams(1.0, 0.0, 2.0), 0, 0.0) == 1.0);
  CHECK(std::abs(pulsed::analytic_z(ModelParams(pi / 2, 0.0, 1.0), 1, 0.0)) < 1e-15);
  const ModelParams m(pi / 4, 0.0, 1.0);
  CHECK(pulsed::analytic_z(m, 4, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
  // Brute force over all 2^4 records.
  double p_end_1 = 0.0;
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<int> rec(4);
    for (int k = 0; k < 4; ++k) rec[k] = (bits >> k) & 1u;
    if (rec[3] == 1) p_end_1 += kraus_chain_probability(m, rec);
  }
  CHECK(p_end_1 == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("analytic z equals the even-flip binomial sum") {
  for (double g : {0.4, 1.0, 3.0}) {
    const ModelParams m(1.0, 0.0, g);
    const double p = pulsed::jump_probability(m);
    for (std::size_t n = 0; n <= 12; ++n) {
      CHECK(std::abs(pulsed::analytic_z(m, n, 0.0) - even_flip_z(p, n)) < 1e-12);
    }
  }
}

TEST_CASE("record probabilities") {
  const ModelParams m(1.0, 0.0, 1.5);
  const pulsed::PulsedConfig one{m, 1, 0, 0};
  const int r1[] = {1};
  CHECK(pulsed::record_probability(one, r1) == doctest::Approx(pulsed::stay_flip_probabilities(m).stay));

  const pulsed::PulsedConfig half{ModelParams(pi / 2, 0.0, 1.0), 3, 0, 0};
  const int r100[] = {1, 0, 0};
  CHECK(pulsed::record_probability(half, r100) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(kraus_chain_probability(half.params, {1, 0, 0}) == doctest::Approx(0.125).epsilon(1e-14));

  for (double d : {0.0, 3.0}) {
    const ModelParams md(1.0, d, 0.8);
    for (std::size_t n = 1; n <= 12; ++n) {
      const pulsed::PulsedConfig cfg{md, n, 0, 0};
      double total = 0.0;
      for (unsigned bits = 0; bits < (1u << n); ++bits) {
        std::vector<int> rec(n);
        for (std::size_t k = 0; k < n; ++k) rec[k] = (bits >> k) & 1u;
        const double p = pulsed::record_probability(cfg, rec);
        if (n <= 6) CHECK(p == doctest::Approx(kraus_chain_probability(md, rec)).epsilon(1e-12));
        total += p;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("mixing rate") {
  CHECK(pulsed::gamma_mix(ModelParams(1.0, 3.0, std::sqrt(10.0) / (2 * pi))) < 1e-30);
  const double g20 = pulsed::gamma_mix(ModelParams(1.0, 0.0, 20.0));
  CHECK(std::abs(g20 - 0.025) / 0.025 < 1e-3);
  const ModelParams base(1.0, 3.0, 0.0);
  const double g = base.omega() / pi;
  CHECK(pulsed::gamma_mix(base.with_gamma(g)) == doctest::Approx(g * std::log(1.25)).epsilon(1e-14));
  CHECK(pulsed::gamma_mix(base.with_gamma(g)) / base.omega() == doctest::Approx(0.07103).epsilon(1e-4));
  for (double d : {0.0, 3.0}) {
    const ModelParams b(1.0, d, 0.0);
    const double gg = 50.0 * b.omega();
    CHECK(std::abs(pulsed::gamma_mix(b.with_gamma(gg)) - 1.0 / (2 * gg)) * 2 * gg < 0.01);
  }
  CHECK_THROWS_AS(pulsed::gamma_mix(ModelParams(pi, 0.0, 1.0)), Error);
}

TEST_CASE("mixing rate is non-monotonic in the structured regime") {
  const ModelParams base(1.0, 3.0, 0.0);
  const double w = base.omega();
  std::vector<double> rates;
  for (int i = 0; i < 200; ++i) {
    const double g = 0.05 * w * std::pow(10.0, i / 199.0);
    rates.push_back(pulsed::gamma_mix(base.with_gamma(g)));
  }
  int changes = 0;
  for (std::size_t i = 2; i < rates.size(); ++i) {
    if ((rates[i] - rates[i - 1]) * (rates[i - 1] - rates[i - 2]) < 0.0) ++changes;
  }
  CHECK(changes >= 2);
}

TEST_CASE("trajectory limits") {
  // Zeno paradox: no flips when the drive is negligible between pulses.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const pulsed::PulsedConfig cfg{ModelParams(1e-6, 0.0, 1.0), 1000, seed, 0};
    CHECK(flips_in(pulsed::simulate_trajectory(cfg, QubitState::excited())) == 0);
  }
  // P_flip = 1: deterministic alternation.
  const pulsed::PulsedConfig alt{ModelParams(pi, 0.0, 1.0), 10, 5, 0};
  const TrajectoryRecord r = pulsed::simulate_trajectory(alt, QubitState::excited());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.readouts[i] == (i % 2 == 0 ? 0.0 : 1.0));
}

TEST_CASE("trajectory records and path") {
  const pulsed::PulsedConfig cfg{ModelParams(1.0, 0.5, 2.0), 5, 11, 4};
  const TrajectoryRecord r = pulsed::simulate_trajectory(cfg, QubitState::excited());
  REQUIRE(r.size() == 5);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r.times[i] == doctest::Approx(0.5 * (i + 1)));
    CHECK(std::abs(r.states[i].z) == 1.0);
    CHECK(r.states[i].z == (r.readouts[i] == 1.0 ? 1.0 : -1.0));
  }
  CHECK(r.path_times.size() == 5 * 4 + 1);
  CHECK(r.path_times.front() == 0.0);
  for (const Bloch& b : r.path_states) CHECK(std::abs(b.length() - 1.0) < 1e-12);
  CHECK_THROWS_AS(pulsed::simulate_trajectory(cfg, QubitState::from_bloch({0, 0, 0.5})), Error);
}

TEST_CASE("flip frequency matches the flip probability") {
  const ModelParams m(1.0, 0.0, 1.0);
  const double p = std::sin(0.5) * std::sin(0.5);
  constexpr std::size_t kRuns = 10000;
  std::size_t flips = 0;
  for (std::size_t i = 0; i < kRuns; ++i) {
    const pulsed::PulsedConfig cfg{m, 1, trajectory_seed(99, i), 0};
    flips += pulsed::simulate_trajectory(cfg, QubitState::excited()).readouts[0] == 0.0;
  }
  const double freq = static_cast<double>(flips) / kRuns;
  CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1 - p) / kRuns));
  CHECK(p == doctest::Approx(0.2298).epsilon(1e-3));
}

TEST_CASE("Monte Carlo mean converges to the analytic z") {
  for (double g : {0.7, 2.0}) {
    const pulsed::PulsedConfig cfg{ModelParams(1.0, 0.0, g), 20, 0, 0};
    const auto e = ensemble::pulsed_ensemble(cfg, 10000, 4242, 1);
    for (std::size_t n = 0; n < e.times.size(); ++n) {
      CHECK(std::abs(e.mean[n].z - pulsed::analytic_z(cfg.params, n, 0.0)) <= 4.0 / 100.0);
    }
  }
}
