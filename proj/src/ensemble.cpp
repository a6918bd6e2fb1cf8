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

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

namespace zeno::ensemble {

namespace {

void require_trajectories(std::size_t m) {
  if (m == 0) fail(ErrorKind::invalid_argument, "ensemble needs at least one trajectory");
}

template <class Simulate>
EnsembleResult run(std::size_t trajectories, std::uint64_t master_seed, std::size_t workers,
                   const QubitState& initial, Simulate simulate) {
  require_trajectories(trajectories);
  // The first trajectory fixes the sampling grid shared by all members.
  const TrajectoryRecord first = simulate(trajectory_seed(master_seed, 0));
  std::vector<double> times{0.0};
  times.insert(times.end(), first.times.begin(), first.times.end());
  const std::size_t n_times = times.size();
  const Bloch b0 = initial.bloch();

  auto work = [&](BlochMoments& acc, std::size_t i) {
    const TrajectoryRecord r = i == 0 ? first : simulate(trajectory_seed(master_seed, i));
    if (r.size() + 1 != n_times) {
      fail(ErrorKind::contract_violation, "trajectory lengths differ within an ensemble");
    }
    acc.add(0, b0);
    for (std::size_t k = 0; k < r.size(); ++k) acc.add(k + 1, r.states[k]);
    ++acc.count;
  };
  const BlochMoments total = parallel_blocks<BlochMoments>(
      trajectories, workers, [n_times] { return BlochMoments(n_times); }, work);
  return summarize(total, std::move(times), trajectories, master_seed);
}

}  // namespace

std::size_t default_workers() {
  if (const char* env = std::getenv("ZENO_LAB_WORKERS")) {
    std::size_t n = 0;
    const char* end = env + std::strlen(env);
    const auto res = std::from_chars(env, end, n);
    if (res.ec == std::errc() && res.ptr == end && n > 0) return n;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

BlochMoments::BlochMoments(std::size_t n_times)
    : sx(n_times), sy(n_times), sz(n_times), sxx(n_times), syy(n_times), szz(n_times) {}

void BlochMoments::add(std::size_t i, const Bloch& b) {
  sx[i] += b.x;
  sy[i] += b.y;
  sz[i] += b.z;
  sxx[i] += b.x * b.x;
  syy[i] += b.y * b.y;
  szz[i] += b.z * b.z;
}

BlochMoments& BlochMoments::operator+=(const BlochMoments& o) {
  for (std::size_t i = 0; i < sx.size(); ++i) {
    sx[i] += o.sx[i];
    sy[i] += o.sy[i];
    sz[i] += o.sz[i];
    sxx[i] += o.sxx[i];
    syy[i] += o.syy[i];
    szz[i] += o.szz[i];
  }
  count += o.count;
  return *this;
}

EnsembleResult summarize(const BlochMoments& m, std::vector<double> times,
                         std::size_t trajectories, std::uint64_t master_seed) {
  EnsembleResult r;
  r.times = std::move(times);
  r.trajectories = trajectories;
  r.master_seed = master_seed;
  const auto n = static_cast<double>(trajectories);
  auto se = [n](double s, double ss) {
    if (n < 2.0) return 0.0;
    const double var = std::max(0.0, (ss - s * s / n) / (n - 1.0));
    return std::sqrt(var / n);
  };
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const Bloch mean{m.sx[i] / n, m.sy[i] / n, m.sz[i] / n};
    r.mean.push_back(mean);
    r.std_error.push_back({se(m.sx[i], m.sxx[i]), se(m.sy[i], m.syy[i]), se(m.sz[i], m.szz[i])});
    r.p1.push_back(std::clamp(0.5 * (1.0 + mean.z), 0.0, 1.0));
  }
  return r;
}

EnsembleResult pulsed_ensemble(const pulsed::PulsedConfig& config, std::size_t trajectories,
                               std::uint64_t master_seed, std::size_t workers) {
  const QubitState initial = QubitState::excited();
  pulsed::PulsedConfig c = config;
  c.substeps = 0;
  return run(trajectories, master_seed, workers, initial, [&](std::uint64_t seed) {
    pulsed::PulsedConfig local = c;
    local.seed = seed;
    return pulsed::simulate_trajectory(local, initial);
  });
}

EnsembleResult continuous_ensemble(const continuous::ContinuousConfig& config,
                                   std::size_t trajectories, std::uint64_t master_seed,
                                   std::size_t workers) {
  config.validate();
  const QubitState initial = QubitState::excited();
  return run(trajectories, master_seed, workers, initial, [&](std::uint64_t seed) {
    continuous::ContinuousConfig local = config;
    local.seed = seed;
    return continuous::simulate_trajectory(local, initial);
  });
}

EnsembleResult poisson_ensemble(const dynamics::PoissonConfig& config, std::size_t trajectories,
                                std::uint64_t master_seed, std::size_t workers) {
  const QubitState initial = QubitState::excited();
  return run(trajectories, master_seed, workers, initial, [&](std::uint64_t seed) {
    dynamics::PoissonConfig local = config;
    local.seed = seed;
    return dynamics::simulate_poisson_trajectory(local, initial);
  });
}

EnsembleResult lindblad_ensemble(const dynamics::LindbladParams& params, double t_final, double dt,
                                 std::size_t sample_every) {
  const dynamics::DensitySeries s = dynamics::integrate_master_equation(
      params, QubitState::excited().density(), t_final, dt, sample_every);
  EnsembleResult r;
  r.times = s.times;
  r.trajectories = 1;
  for (const Operator& rho : s.states) {
    const Bloch b = bloch_of(rho);
    r.mean.push_back(b);
    r.std_error.push_back({0.0, 0.0, 0.0});
    r.p1.push_back(std::clamp(std::real(rho(0, 0)), 0.0, 1.0));
  }
  return r;
}

}  // namespace zeno::ensemble
