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

#include "zeno/runner.hpp"

#include "zeno/continuous.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"
#include "zeno/pulsed.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace zeno::runner {

namespace {

using config::Mode;
using config::RunConfig;

io::Table bloch_table(const std::vector<double>& times, const std::vector<Bloch>& states) {
  std::vector<double> x, y, z, p1;
  for (const Bloch& b : states) {
    x.push_back(b.x);
    y.push_back(b.y);
    z.push_back(b.z);
    p1.push_back(std::clamp(0.5 * (1.0 + b.z), 0.0, 1.0));
  }
  io::Table t;
  t.add("t", times).add("x", x).add("y", y).add("z", z).add("p1", p1);
  return t;
}

io::Table trajectory_table(const TrajectoryRecord& r, std::optional<double> filter_tau,
                           double sample_dt) {
  io::Table t = bloch_table(r.times, r.states);
  t.add("r_raw", r.readouts);
  if (filter_tau) t.add("r_filtered", exponential_filter(r.readouts, sample_dt, *filter_tau));
  return t;
}

io::Table ensemble_table(const ensemble::EnsembleResult& e, bool with_errors) {
  io::Table t = bloch_table(e.times, e.mean);
  if (with_errors) {
    std::vector<double> xs, ys, zs;
    for (const Bloch& s : e.std_error) {
      xs.push_back(s.x);
      ys.push_back(s.y);
      zs.push_back(s.z);
    }
    t.add("x_se", xs).add("y_se", ys).add("z_se", zs);
  }
  return t;
}

std::size_t workers_of(const RunConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : ensemble::default_workers();
}

dynamics::LindbladParams lindblad_of(const RunConfig& cfg) {
  dynamics::LindbladParams p{cfg.model(), cfg.gamma_one, cfg.t1_direction};
  p.validate();
  return p;
}

double fallback_dt(double fastest, double t_final, double bound) {
  return fastest > 0.0 ? bound / fastest : t_final / 1000.0;
}

void pulsed_mode(const RunConfig& cfg, Artifacts& a) {
  const ModelParams m = cfg.model();
  pulsed::PulsedConfig pc{m, 0, cfg.seed, cfg.substeps};
  const double dt = pc.dt_pulse();
  pc.n_pulses = cfg.n_pulses ? *cfg.n_pulses
                             : static_cast<std::size_t>(std::llround(cfg.t_final / dt));
  if (cfg.trajectories == 1) {
    const TrajectoryRecord r = pulsed::simulate_trajectory(pc, QubitState::excited());
    a.table = trajectory_table(r, cfg.filter_tau, dt);
    if (cfg.substeps > 0) a.path = bloch_table(r.path_times, r.path_states);
    return;
  }
  a.table = ensemble_table(
      ensemble::pulsed_ensemble(pc, cfg.trajectories, cfg.seed, workers_of(cfg)), true);
}

void continuous_mode(const RunConfig& cfg, Artifacts& a) {
  const ModelParams m = cfg.model();
  continuous::ContinuousConfig cc{m,         cfg.dt.value_or(continuous::ContinuousConfig::default_dt(m)),
                                  cfg.t_final, cfg.seed, cfg.filter_tau, cfg.sample_every};
  if (cfg.trajectories == 1) {
    const TrajectoryRecord r = continuous::simulate_trajectory(cc, QubitState::excited());
    a.table = trajectory_table(r, cfg.filter_tau, cc.dt_step * static_cast<double>(cc.record_every));
    return;
  }
  a.table = ensemble_table(
      ensemble::continuous_ensemble(cc, cfg.trajectories, cfg.seed, workers_of(cfg)), true);
}

void ode_mode(const RunConfig& cfg, Artifacts& a) {
  const dynamics::LindbladParams p = lindblad_of(cfg);
  const double fastest = std::max({p.model.omega(), 2.0 * p.model.gamma(), p.gamma_one});
  const double dt = cfg.dt.value_or(fallback_dt(fastest, cfg.t_final, 0.02));
  a.table = ensemble_table(ensemble::lindblad_ensemble(p, cfg.t_final, dt, cfg.sample_every), false);
}

void poisson_mode(const RunConfig& cfg, Artifacts& a) {
  const dynamics::LindbladParams p = lindblad_of(cfg);
  const double fastest = std::max(p.model.omega(), 2.0 * p.model.gamma());
  dynamics::PoissonConfig pc{p, cfg.dt.value_or(fallback_dt(fastest, cfg.t_final, 0.05)),
                             cfg.t_final, cfg.seed, cfg.sample_every};
  if (cfg.trajectories == 1) {
    const TrajectoryRecord r = dynamics::simulate_poisson_trajectory(pc, QubitState::excited());
    a.table = trajectory_table(r, std::nullopt, 0.0);
    a.table.columns.back().name = "events";
    return;
  }
  a.table = ensemble_table(
      ensemble::poisson_ensemble(pc, cfg.trajectories, cfg.seed, workers_of(cfg)), true);
}

void sweep_mode(const RunConfig& cfg, Artifacts& a) {
  const ModelParams base(cfg.omega_r, cfg.delta, 0.0);
  const analysis::HeatmapSource source = cfg.heatmap_source.value_or(
      cfg.delta == 0.0 ? analysis::HeatmapSource::continuous_analytic
                       : analysis::HeatmapSource::lindblad_rk4);
  a.heatmap = analysis::heatmap_grid(base, cfg.gamma_grid.values(), cfg.t_final, cfg.t_points,
                                     source);
  a.note = std::string("source=") + analysis::to_string(source);
}

void rates_mode(const RunConfig& cfg, Artifacts& a) {
  const ModelParams base(cfg.omega_r, cfg.delta, 0.0);
  const double crit = dynamics::critical_rate(base);
  if (!(crit > 0.0)) fail(ErrorKind::configuration, "critical rate is zero; set omega_r > 0");
  const std::vector<double> ratios = cfg.gamma_grid.values();
  std::vector<double> gammas;
  for (double r : ratios) gammas.push_back(r * crit);

  std::vector<double> rates;
  std::string source_name;
  if (cfg.gamma_one > 0.0) {
    rates = dynamics::t1_decay_rates({base, cfg.gamma_one, cfg.t1_direction}, gammas);
    source_name = "t1_lindblad";
  } else {
    const analysis::RateSource source = cfg.rate_source.value_or(
        cfg.delta == 0.0 ? analysis::RateSource::continuous_orthogonal
                         : analysis::RateSource::continuous_stabilized);
    rates = analysis::mixing_rates(source, base, gammas);
    source_name = analysis::to_string(source);
  }
  const analysis::ZenoResponseCurve curve = analysis::zeno_response_scan(gammas, rates);
  std::vector<std::string> labels;
  for (auto l : curve.regime_labels) labels.emplace_back(analysis::to_string(l));
  a.table.add("gamma_over_crit", ratios)
      .add("gamma", gammas)
      .add("gamma_mix", curve.gamma_mix_values)
      .add("response", curve.response_values)
      .add_text("regime", labels);
  a.note = "source=" + source_name;
  if (const auto loc = analysis::locate_critical_rate(curve)) {
    a.note += " located_gamma_crit=" + io::format_double(loc->value);
  } else {
    a.note += " located_gamma_crit=none";
  }
}

std::string path_file(const std::string& out, io::Format f) {
  return out + (f == io::Format::csv ? ".path.csv" : ".path.json");
}

}  // namespace

Artifacts compute(const RunConfig& cfg) {
  Artifacts a;
  a.meta.mode = config::to_string(cfg.mode);
  a.meta.seed = cfg.seed;
  a.meta.config = cfg.echo();
  switch (cfg.mode) {
    case Mode::pulsed_traj: pulsed_mode(cfg, a); break;
    case Mode::continuous_traj: continuous_mode(cfg, a); break;
    case Mode::ensemble_ode: ode_mode(cfg, a); break;
    case Mode::poisson_ensemble: poisson_mode(cfg, a); break;
    case Mode::sweep_heatmap: sweep_mode(cfg, a); break;
    case Mode::rates_scan: rates_mode(cfg, a); break;
  }
  return a;
}

RunSummary run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Artifacts a = compute(cfg);
  // Validate everything before the first byte goes out.
  if (a.heatmap) {
    io::check_finite(*a.heatmap);
  } else {
    io::check_finite(a.table);
  }
  if (a.path) io::check_finite(*a.path);

  if (a.heatmap) {
    io::write_matrix(*a.heatmap, a.meta, cfg.out, cfg.format);
  } else {
    io::write_series(a.table, a.meta, cfg.out, cfg.format);
  }
  if (a.path && !cfg.out.empty()) {
    io::write_series(*a.path, a.meta, path_file(cfg.out, cfg.format), cfg.format);
  }
  RunSummary s;
  s.mode = a.meta.mode;
  s.trajectories = cfg.trajectories;
  s.out = cfg.out.empty() ? "-" : cfg.out;
  s.note = a.note;
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string summary_line(const RunSummary& s) {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", s.wall_seconds);
  std::string line = "mode=" + s.mode + " M=" + std::to_string(s.trajectories) + " wall=" + wall +
                     "s out=" + s.out;
  if (!s.note.empty()) line += " " + s.note;
  return line;
}

}  // namespace zeno::runner
