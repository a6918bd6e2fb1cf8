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

#include "zeno/continuous.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/pulsed.hpp"
#include "zeno/qubit.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace zeno::ensemble {

/// Nonselective estimate from M selective trajectories.
struct EnsembleResult {
  std::vector<double> times;
  std::vector<Bloch> mean;
  /// sample standard deviation / sqrt(M), per component.
  std::vector<Bloch> std_error;
  std::vector<double> p1;
  std::size_t trajectories = 0;
  std::uint64_t master_seed = 0;
};

/// Worker count from ZENO_LAB_WORKERS, else the hardware concurrency (>= 1).
std::size_t default_workers();

/// Trajectories per scheduling block. Partial results are reduced block by
/// block in index order, so sums do not depend on the worker count.
inline constexpr std::size_t kBlockSize = 256;

/// Runs work(acc, i) for i in [0, count) over `workers` threads. Each block of
/// kBlockSize indices accumulates into its own make() instance; the blocks are
/// then merged with operator+= in block order. The exception of the lowest
/// failing block is rethrown.
template <class Acc, class Make, class Work>
Acc parallel_blocks(std::size_t count, std::size_t workers, Make make, Work work) {
  const std::size_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Acc> partial;
  partial.reserve(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) partial.push_back(make());
  std::vector<std::exception_ptr> errors(n_blocks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto drain = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks || stop.load()) return;
      try {
        const std::size_t end = std::min(count, (b + 1) * kBlockSize);
        for (std::size_t i = b * kBlockSize; i < end; ++i) work(partial[b], i);
      } catch (...) {
        errors[b] = std::current_exception();
        stop.store(true);
      }
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n_blocks, 1));
  if (n_threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(drain);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc total = make();
  for (auto& p : partial) total += p;
  return total;
}

/// Per-time sums of Bloch components and their squares.
struct BlochMoments {
  explicit BlochMoments(std::size_t n_times = 0);

  void add(std::size_t index, const Bloch& b);
  BlochMoments& operator+=(const BlochMoments& other);

  std::vector<double> sx, sy, sz, sxx, syy, szz;
  std::size_t count = 0;
};

/// Mean and standard error from moments over `trajectories` samples.
EnsembleResult summarize(const BlochMoments& m, std::vector<double> times,
                         std::size_t trajectories, std::uint64_t master_seed);

/// Trajectory i uses seed trajectory_seed(master_seed, i). The result holds
/// t = 0 followed by every pulse time.
EnsembleResult pulsed_ensemble(const pulsed::PulsedConfig& config, std::size_t trajectories,
                               std::uint64_t master_seed, std::size_t workers);

/// Samples every config.record_every steps, plus t = 0.
EnsembleResult continuous_ensemble(const continuous::ContinuousConfig& config,
                                   std::size_t trajectories, std::uint64_t master_seed,
                                   std::size_t workers);

EnsembleResult poisson_ensemble(const dynamics::PoissonConfig& config, std::size_t trajectories,
                                std::uint64_t master_seed, std::size_t workers);

/// Deterministic Lindblad result in the same shape (zero standard errors).
EnsembleResult lindblad_ensemble(const dynamics::LindbladParams& params, double t_final, double dt,
                                 std::size_t sample_every);

}  // namespace zeno::ensemble
