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

#include "zeno/analysis.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zeno::config {

enum class Mode {
  pulsed_traj,
  continuous_traj,
  ensemble_ode,
  poisson_ensemble,
  sweep_heatmap,
  rates_scan,
};

const char* to_string(Mode m);

/// `log:start:stop:count` or `lin:start:stop:count`, in units of gamma_crit.
struct GridSpec {
  bool logarithmic = true;
  double start = 0.1;
  double stop = 10.0;
  std::size_t count = 41;

  std::vector<double> values() const;
  std::string text() const;
  static GridSpec parse(std::string_view text);
};

/// Time keys (t_final, dt, filter_tau) are read in units of 1/omega_r by
/// default, or of the Rabi period 2 pi/omega_r.
enum class TimeUnit { inverse_omega_r, rabi_period };

struct RunConfig {
  Mode mode = Mode::ensemble_ode;
  double omega_r = 1.0;
  double delta = 0.0;
  std::optional<double> gamma;
  GridSpec gamma_grid;
  double gamma_one = 0.0;
  dynamics::T1Direction t1_direction = dynamics::T1Direction::toward_state_0;
  double t_final = 10.0;
  std::optional<double> dt;
  std::optional<std::size_t> n_pulses;
  std::size_t substeps = 20;
  std::size_t trajectories = 1;
  std::uint64_t seed = 1;
  /// 0 selects ZENO_LAB_WORKERS or the hardware concurrency.
  std::size_t workers = 0;
  io::Format format = io::Format::csv;
  /// Empty writes to stdout.
  std::string out;
  std::optional<double> filter_tau;
  std::size_t t_points = 201;
  std::size_t sample_every = 1;
  /// Unset means continuous_orthogonal for delta = 0, stabilized otherwise.
  std::optional<analysis::RateSource> rate_source;
  /// Rates scans with gamma_one > 0 use the fitted Lindblad decay instead.
  std::optional<analysis::HeatmapSource> heatmap_source;
  TimeUnit time_unit = TimeUnit::inverse_omega_r;

  /// Model at `gamma` (configuration error when gamma is unset).
  ModelParams model() const;
  /// Normalised key=value pairs of every setting, for output metadata.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Raw `key = value` entries with the line (or flag) they came from.
struct Entry {
  std::string value;
  std::string origin;
};
using KeyValues = std::map<std::string, Entry>;

/// Flat `key = value` text; '#' starts a comment; blank lines ignored.
/// Duplicate keys and malformed lines are parse errors naming the line.
KeyValues parse_key_values(std::string_view text, std::string_view source = "config");

/// `key=value` from a --set flag.
std::pair<std::string, Entry> parse_override(std::string_view flag);

/// Applies `entries` over defaults and validates. Unknown keys, malformed
/// numbers and violated invariants are parse errors naming key and origin.
RunConfig build(const KeyValues& entries);

/// parse_key_values + build.
RunConfig parse_config(std::string_view text);

std::vector<std::string> known_keys();

}  // namespace zeno::config
