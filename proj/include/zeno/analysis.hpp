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

#include "zeno/dynamics.hpp"
#include "zeno/qubit.hpp"
#include "zeno/trajectory.hpp"

#include <optional>
#include <span>
#include <vector>

namespace zeno::analysis {

enum class FitMethod { log_linear_fit, peak_envelope_fit, dwell_time, analytic };

const char* to_string(FitMethod m);

struct RateEstimate {
  double value = 0.0;
  double std_error = 0.0;
  FitMethod method = FitMethod::analytic;
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Only points with lo <= |z| <= hi enter a fit.
struct FitWindow {
  double lo = 0.05;
  double hi = 0.8;
};

/// P_1 = (1 + z)/2, clamped to [0, 1].
std::vector<double> survival_probability(std::span<const Bloch> states);
std::vector<double> survival_probability(const dynamics::DensitySeries& series);

/// Exponential envelope rate of z(t). log_linear_fit regresses ln|z| on t over
/// the window; peak_envelope_fit regresses ln of the local maxima of |z|.
/// Throws insufficient_data for fewer than 10 samples, all |z| below 1e-3, or
/// fewer than 3 usable points. When `sigma` (standard errors of z) is given,
/// points are weighted by the inverse variance of ln|z|, (z/sigma)^2.
RateEstimate fit_decay_envelope(std::span<const double> t, std::span<const double> z,
                                FitMethod method, FitWindow window = {},
                                std::span<const double> sigma = {});

/// Telegraph statistics from a hysteresis detector. Time at a level is the
/// span between samples attributed to the level of the earlier sample.
struct JumpCounts {
  std::size_t up = 0;    // 0 -> 1 transitions
  std::size_t down = 0;  // 1 -> 0 transitions
  double time_1 = 0.0;
  double time_0 = 0.0;

  JumpCounts& operator+=(const JumpCounts& other);
};

struct JumpRateEstimate {
  RateEstimate combined;
  /// Rate of leaving |1> and of leaving |0>; empty when no time was spent there.
  std::optional<double> rate_out_of_1;
  std::optional<double> rate_out_of_0;
  /// Set when one of the two levels was never visited.
  bool one_sided = false;
  JumpCounts counts;
};

/// Requires -1 < threshold_lo < threshold_hi < 1.
JumpCounts count_jumps(const TrajectoryRecord& traj, double threshold_hi = 0.8,
                       double threshold_lo = -0.8);

JumpRateEstimate jump_rate_from_counts(const JumpCounts& counts);

JumpRateEstimate estimate_jump_rate(const TrajectoryRecord& traj, double threshold_hi = 0.8,
                                    double threshold_lo = -0.8);

enum class RegimeLabel { anti_zeno, critical, zeno };

const char* to_string(RegimeLabel l);

struct ZenoResponseCurve {
  std::vector<double> gamma_grid;
  std::vector<double> gamma_mix_values;
  /// -d Gamma_mix / d gamma.
  std::vector<double> response_values;
  std::vector<RegimeLabel> regime_labels;
};

enum class RateSource { pulsed_analytic, continuous_orthogonal, continuous_stabilized };

const char* to_string(RateSource s);

/// Analytic Gamma_mix at each gamma (drive taken from `base`).
std::vector<double> mixing_rates(RateSource source, const ModelParams& base,
                                 std::span<const double> gamma_grid);

/// d values / d gamma on a strictly increasing positive grid (normally
/// log-spaced): three-point stencils through neighbouring nodes in the
/// interior (exact for quadratics in gamma), the adjacent secant at the ends.
/// Invalid argument for fewer than 2 points or a non-monotone grid.
std::vector<double> derivative_on_grid(std::span<const double> gamma_grid,
                                       std::span<const double> values);

/// Requires at least 3 strictly increasing grid points.
ZenoResponseCurve zeno_response_scan(std::span<const double> gamma_grid,
                                     std::span<const double> gamma_mix_values,
                                     double dead_band = 1e-3);
ZenoResponseCurve zeno_response_scan(std::span<const double> gamma_grid, RateSource source,
                                     const ModelParams& base, double dead_band = 1e-3);

struct CriticalRate {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// First sign change of the response, refined by bisection on the response
/// interpolated linearly in ln(gamma). Empty when the response never changes sign.
std::optional<CriticalRate> locate_critical_rate(const ZenoResponseCurve& curve);

/// pi omega_r^2 L(0), L the unit-area Lorentzian at omega with half-width 2 gamma.
double spectral_overlap(const ModelParams& model);

enum class HeatmapSource { continuous_analytic, pulsed_analytic, lindblad_rk4 };

const char* to_string(HeatmapSource s);

struct Heatmap {
  /// gamma / gamma_crit per row.
  std::vector<double> gamma_over_crit;
  std::vector<double> times;
  /// values[row][col] = P_1(times[col]) at gamma_over_crit[row].
  std::vector<std::vector<double>> values;
};

/// P_1 over a gamma x t grid starting from |1>. Times are uniform on
/// [0, t_final] with n_times points. continuous_analytic needs delta = 0.
Heatmap heatmap_grid(const ModelParams& base, std::span<const double> gamma_over_crit,
                     double t_final, std::size_t n_times, HeatmapSource source);

/// Log- or linearly spaced grid with n >= 2 points, start < stop.
std::vector<double> log_grid(double start, double stop, std::size_t n);
std::vector<double> lin_grid(double start, double stop, std::size_t n);

}  // namespace zeno::analysis
