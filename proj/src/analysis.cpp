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

#include "zeno/error.hpp"
#include "zeno/pulsed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zeno::analysis {

namespace {

constexpr double kNoiseFloor = 1e-3;
constexpr std::size_t kMinSamples = 10;
constexpr std::size_t kMinFitPoints = 3;

struct LineFit {
  double slope = 0.0;
  double slope_se = 0.0;
};

// Weighted least squares; w empty means unit weights. The slope error is
// scaled by the residual variance, so only relative weights matter.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& w) {
  auto weight = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
  double sw = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += weight(i);
    mx += weight(i) * x[i];
    my += weight(i) * y[i];
  }
  mx /= sw;
  my /= sw;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += weight(i) * (x[i] - mx) * (x[i] - mx);
    sxy += weight(i) * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorKind::insufficient_data, "fit points share a single time");
  LineFit fit;
  fit.slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - my - fit.slope * (x[i] - mx);
    ssr += weight(i) * r * r;
  }
  const auto n = static_cast<double>(x.size());
  fit.slope_se = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  return fit;
}

void check_grid(std::span<const double> grid, std::size_t min_points) {
  if (grid.size() < min_points) {
    fail(ErrorKind::invalid_argument,
         "gamma grid needs at least " + std::to_string(min_points) + " points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      fail(ErrorKind::invalid_argument, "gamma grid values must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      fail(ErrorKind::invalid_argument, "gamma grid must be strictly increasing");
    }
  }
}

RegimeLabel label_for(double response, double dead_band) {
  if (std::abs(response) < dead_band) return RegimeLabel::critical;
  return response < 0.0 ? RegimeLabel::anti_zeno : RegimeLabel::zeno;
}

}  // namespace

const char* to_string(FitMethod m) {
  switch (m) {
    case FitMethod::log_linear_fit: return "log_linear_fit";
    case FitMethod::peak_envelope_fit: return "peak_envelope_fit";
    case FitMethod::dwell_time: return "dwell_time";
    case FitMethod::analytic: return "analytic";
  }
  return "unknown";
}

const char* to_string(RegimeLabel l) {
  switch (l) {
    case RegimeLabel::anti_zeno: return "anti_zeno";
    case RegimeLabel::critical: return "critical";
    case RegimeLabel::zeno: return "zeno";
  }
  return "unknown";
}

const char* to_string(RateSource s) {
  switch (s) {
    case RateSource::pulsed_analytic: return "pulsed_analytic";
    case RateSource::continuous_orthogonal: return "continuous_orthogonal";
    case RateSource::continuous_stabilized: return "continuous_stabilized";
  }
  return "unknown";
}

const char* to_string(HeatmapSource s) {
  switch (s) {
    case HeatmapSource::continuous_analytic: return "continuous_analytic";
    case HeatmapSource::pulsed_analytic: return "pulsed_analytic";
    case HeatmapSource::lindblad_rk4: return "lindblad_rk4";
  }
  return "unknown";
}

std::vector<double> survival_probability(std::span<const Bloch> states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const Bloch& b : states) out.push_back(std::clamp(0.5 * (1.0 + b.z), 0.0, 1.0));
  return out;
}

std::vector<double> survival_probability(const dynamics::DensitySeries& series) {
  std::vector<double> out;
  out.reserve(series.states.size());
  for (const Operator& rho : series.states) {
    out.push_back(std::clamp(std::real(rho(0, 0)), 0.0, 1.0));
  }
  return out;
}

RateEstimate fit_decay_envelope(std::span<const double> t, std::span<const double> z,
                                FitMethod method, FitWindow window,
                                std::span<const double> sigma) {
  if (t.size() != z.size()) fail(ErrorKind::invalid_argument, "t and z lengths differ");
  if (!sigma.empty() && sigma.size() != z.size()) {
    fail(ErrorKind::invalid_argument, "sigma and z lengths differ");
  }
  if (t.size() < kMinSamples) {
    fail(ErrorKind::insufficient_data, "envelope fit needs at least 10 samples");
  }
  if (!(window.lo > 0.0 && window.lo < window.hi)) {
    fail(ErrorKind::invalid_argument, "fit window must satisfy 0 < lo < hi");
  }
  double peak = 0.0;
  for (double v : z) peak = std::max(peak, std::abs(v));
  if (peak < kNoiseFloor) fail(ErrorKind::insufficient_data, "signal below the noise floor");

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ws;
  auto take = [&](std::size_t i) {
    const double a = std::abs(z[i]);
    xs.push_back(t[i]);
    ys.push_back(std::log(a));
    if (!sigma.empty()) {
      if (!(sigma[i] > 0.0)) {
        fail(ErrorKind::invalid_argument, "standard errors inside the fit window must be > 0");
      }
      ws.push_back((a / sigma[i]) * (a / sigma[i]));
    }
  };
  if (method == FitMethod::log_linear_fit) {
    // From the first entry into the window until |z| first drops below it.
    std::size_t i = 0;
    while (i < z.size() && std::abs(z[i]) > window.hi) ++i;
    for (; i < z.size(); ++i) {
      const double a = std::abs(z[i]);
      if (a < window.lo) break;
      if (a > window.hi) continue;
      take(i);
    }
  } else if (method == FitMethod::peak_envelope_fit) {
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
      const double a = std::abs(z[i]);
      if (a > std::abs(z[i - 1]) && a >= std::abs(z[i + 1]) && a >= window.lo &&
          a <= window.hi) {
        take(i);
      }
    }
  } else {
    fail(ErrorKind::invalid_argument, "envelope fit supports log_linear_fit and peak_envelope_fit");
  }
  if (xs.size() < kMinFitPoints) {
    fail(ErrorKind::insufficient_data,
         "only " + std::to_string(xs.size()) + " usable points inside the fit window");
  }
  const LineFit fit = least_squares(xs, ys, ws);
  if (!(fit.slope < 0.0)) fail(ErrorKind::insufficient_data, "no decay inside the fit window");
  return {-fit.slope, fit.slope_se, method, xs.front(), xs.back()};
}

JumpCounts& JumpCounts::operator+=(const JumpCounts& other) {
  up += other.up;
  down += other.down;
  time_1 += other.time_1;
  time_0 += other.time_0;
  return *this;
}

JumpCounts count_jumps(const TrajectoryRecord& traj, double threshold_hi, double threshold_lo) {
  if (!(-1.0 < threshold_lo && threshold_lo < threshold_hi && threshold_hi < 1.0)) {
    fail(ErrorKind::invalid_argument, "thresholds must satisfy -1 < lo < hi < 1");
  }
  JumpCounts c;
  int level = -1;  // undetermined until the first threshold crossing
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i > 0 && level >= 0) {
      const double span = traj.times[i] - traj.times[i - 1];
      (level == 1 ? c.time_1 : c.time_0) += span;
    }
    const double z = traj.states[i].z;
    if (z >= threshold_hi && level != 1) {
      if (level == 0) ++c.up;
      level = 1;
    } else if (z <= threshold_lo && level != 0) {
      if (level == 1) ++c.down;
      level = 0;
    }
  }
  return c;
}

JumpRateEstimate jump_rate_from_counts(const JumpCounts& counts) {
  JumpRateEstimate e;
  e.counts = counts;
  const double total_time = counts.time_1 + counts.time_0;
  const auto n = static_cast<double>(counts.up + counts.down);
  e.combined.method = FitMethod::dwell_time;
  e.combined.t_end = total_time;
  if (total_time > 0.0) {
    e.combined.value = n / total_time;
    // Poisson counting error; with no events, the one-event scale 1/T.
    e.combined.std_error = n > 0.0 ? e.combined.value / std::sqrt(n) : 1.0 / total_time;
  }
  if (counts.time_1 > 0.0) e.rate_out_of_1 = static_cast<double>(counts.down) / counts.time_1;
  if (counts.time_0 > 0.0) e.rate_out_of_0 = static_cast<double>(counts.up) / counts.time_0;
  e.one_sided = !(counts.time_1 > 0.0 && counts.time_0 > 0.0);
  return e;
}

JumpRateEstimate estimate_jump_rate(const TrajectoryRecord& traj, double threshold_hi,
                                    double threshold_lo) {
  JumpRateEstimate e = jump_rate_from_counts(count_jumps(traj, threshold_hi, threshold_lo));
  if (traj.size() > 0) {
    e.combined.t_start = traj.times.front();
    e.combined.t_end = traj.times.back();
  }
  return e;
}

std::vector<double> mixing_rates(RateSource source, const ModelParams& base,
                                 std::span<const double> gamma_grid) {
  std::vector<double> out;
  out.reserve(gamma_grid.size());
  for (double g : gamma_grid) {
    const ModelParams m = base.with_gamma(g);
    switch (source) {
      case RateSource::pulsed_analytic:
        out.push_back(pulsed::gamma_mix(m));
        break;
      case RateSource::continuous_orthogonal:
        out.push_back(dynamics::analytic_solution_orthogonal(m).gamma_mix);
        break;
      case RateSource::continuous_stabilized:
        out.push_back(dynamics::gamma_mix_stabilized(m));
        break;
    }
  }
  return out;
}

std::vector<double> derivative_on_grid(std::span<const double> gamma_grid,
                                       std::span<const double> values) {
  check_grid(gamma_grid, 2);
  if (values.size() != gamma_grid.size()) {
    fail(ErrorKind::invalid_argument, "grid and values lengths differ");
  }
  const std::size_t n = gamma_grid.size();
  const auto& g = gamma_grid;
  const auto& f = values;
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (g[1] - g[0]);
    return d;
  }
  // Interior: three-point Lagrange stencils on the (log-spaced) nodes, exact
  // for quadratics. Ends: the adjacent secant, which keeps the sign of the
  // last step where the one-sided quadratic can overshoot on coarse grids.
  auto stencil = [&](std::size_t a, std::size_t b, std::size_t c, double x) {
    const double xa = g[a], xb = g[b], xc = g[c];
    return f[a] * (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc)) +
           f[b] * (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc)) +
           f[c] * (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
  };
  d[0] = (f[1] - f[0]) / (g[1] - g[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = stencil(i - 1, i, i + 1, g[i]);
  d[n - 1] = (f[n - 1] - f[n - 2]) / (g[n - 1] - g[n - 2]);
  return d;
}

ZenoResponseCurve zeno_response_scan(std::span<const double> gamma_grid,
                                     std::span<const double> gamma_mix_values,
                                     double dead_band) {
  check_grid(gamma_grid, 3);
  if (!(dead_band >= 0.0)) fail(ErrorKind::invalid_argument, "dead band must be >= 0");
  ZenoResponseCurve c;
  c.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  c.gamma_mix_values.assign(gamma_mix_values.begin(), gamma_mix_values.end());
  c.response_values = derivative_on_grid(gamma_grid, gamma_mix_values);
  for (double& r : c.response_values) {
    r = -r;
    c.regime_labels.push_back(label_for(r, dead_band));
  }
  return c;
}

ZenoResponseCurve zeno_response_scan(std::span<const double> gamma_grid, RateSource source,
                                     const ModelParams& base, double dead_band) {
  check_grid(gamma_grid, 3);
  const std::vector<double> rates = mixing_rates(source, base, gamma_grid);
  return zeno_response_scan(gamma_grid, rates, dead_band);
}

std::optional<CriticalRate> locate_critical_rate(const ZenoResponseCurve& curve) {
  const auto& g = curve.gamma_grid;
  const auto& r = curve.response_values;
  const auto& labels = curve.regime_labels;
  if (g.size() != r.size() || g.size() != labels.size()) {
    fail(ErrorKind::invalid_argument, "response curve arrays differ in length");
  }
  // Consecutive labelled (non-critical) points of opposite sign.
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (labels[i] == RegimeLabel::critical) continue;
    if (prev && labels[*prev] != labels[i]) {
      const std::size_t a = *prev;
      const std::size_t b = i;
      const double ua = std::log(g[a]);
      const double ub = std::log(g[b]);
      auto interp = [&](double u) { return r[a] + (r[b] - r[a]) * (u - ua) / (ub - ua); };
      double lo = ua;
      double hi = ub;
      const double sign_lo = interp(lo) < 0.0 ? -1.0 : 1.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = interp(mid);
        if (v == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((v < 0.0 ? -1.0 : 1.0) == sign_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return CriticalRate{std::exp(0.5 * (lo + hi)), g[a], g[b]};
    }
    prev = i;
  }
  return std::nullopt;
}

double spectral_overlap(const ModelParams& model) {
  const double width = 2.0 * model.gamma();
  if (!(width > 0.0)) fail(ErrorKind::invalid_argument, "spectral overlap needs gamma > 0");
  const double w = model.omega();
  const double lorentzian_at_zero = width / (std::numbers::pi * (w * w + width * width));
  return std::numbers::pi * model.omega_r() * model.omega_r() * lorentzian_at_zero;
}

std::vector<double> log_grid(double start, double stop, std::size_t n) {
  if (!(start > 0.0) || !(stop > start) || !std::isfinite(stop) || n < 2) {
    fail(ErrorKind::invalid_argument, "log grid needs 0 < start < stop and n >= 2");
  }
  std::vector<double> out(n);
  const double a = std::log(start);
  const double b = std::log(stop);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<double> lin_grid(double start, double stop, std::size_t n) {
  if (!(stop > start) || !std::isfinite(start) || !std::isfinite(stop) || n < 2) {
    fail(ErrorKind::invalid_argument, "linear grid needs start < stop and n >= 2");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = stop;
  return out;
}

Heatmap heatmap_grid(const ModelParams& base, std::span<const double> gamma_over_crit,
                     double t_final, std::size_t n_times, HeatmapSource source) {
  if (gamma_over_crit.empty()) fail(ErrorKind::invalid_argument, "empty gamma grid");
  const double crit = dynamics::critical_rate(base);
  if (!(crit > 0.0)) fail(ErrorKind::invalid_argument, "critical rate is zero for this drive");
  Heatmap h;
  h.gamma_over_crit.assign(gamma_over_crit.begin(), gamma_over_crit.end());
  h.times = lin_grid(0.0, t_final, n_times);
  h.values.reserve(gamma_over_crit.size());

  for (double ratio : gamma_over_crit) {
    if (!(ratio > 0.0)) fail(ErrorKind::invalid_argument, "gamma/gamma_crit must be positive");
    const ModelParams m = base.with_gamma(ratio * crit);
    std::vector<double> row;
    row.reserve(n_times);
    switch (source) {
      case HeatmapSource::continuous_analytic:
        for (double t : h.times) row.push_back(0.5 * (1.0 + dynamics::orthogonal_z(m, t)));
        break;
      case HeatmapSource::pulsed_analytic:
        for (double t : h.times) row.push_back(0.5 * (1.0 + pulsed::analytic_z_at(m, t)));
        break;
      case HeatmapSource::lindblad_rk4: {
        const double spacing = t_final / static_cast<double>(n_times - 1);
        const double dt_max = 0.02 / std::max(m.omega(), 2.0 * m.gamma());
        const auto sub = static_cast<std::size_t>(std::ceil(spacing / dt_max));
        const dynamics::DensitySeries s = dynamics::integrate_master_equation(
            {m}, QubitState::excited().density(), t_final, spacing / static_cast<double>(sub),
            sub);
        if (s.states.size() != n_times) {
          fail(ErrorKind::contract_violation, "integrator grid does not match the time grid");
        }
        row = survival_probability(s);
        break;
      }
    }
    for (double& v : row) v = std::clamp(v, 0.0, 1.0);
    h.values.push_back(std::move(row));
  }
  return h;
}

}  // namespace zeno::analysis
