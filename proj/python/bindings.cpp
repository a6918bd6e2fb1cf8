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
#include "zeno/config.hpp"
#include "zeno/continuous.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"
#include "zeno/io.hpp"
#include "zeno/pulsed.hpp"
#include "zeno/runner.hpp"
#include "zeno/validation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace zeno;

namespace {

py::dict ensemble_dict(const ensemble::EnsembleResult& e) {
  std::vector<double> x, y, z, xs, ys, zs;
  for (std::size_t i = 0; i < e.mean.size(); ++i) {
    x.push_back(e.mean[i].x);
    y.push_back(e.mean[i].y);
    z.push_back(e.mean[i].z);
    xs.push_back(e.std_error[i].x);
    ys.push_back(e.std_error[i].y);
    zs.push_back(e.std_error[i].z);
  }
  py::dict d;
  d["t"] = e.times;
  d["x"] = x;
  d["y"] = y;
  d["z"] = z;
  d["p1"] = e.p1;
  d["x_se"] = xs;
  d["y_se"] = ys;
  d["z_se"] = zs;
  d["trajectories"] = e.trajectories;
  d["master_seed"] = e.master_seed;
  return d;
}

py::dict trajectory_dict(const TrajectoryRecord& r) {
  std::vector<double> x, y, z;
  for (const Bloch& b : r.states) {
    x.push_back(b.x);
    y.push_back(b.y);
    z.push_back(b.z);
  }
  py::dict d;
  d["t"] = r.times;
  d["x"] = x;
  d["y"] = y;
  d["z"] = z;
  d["readout"] = r.readouts;
  d["seed"] = r.seed;
  return d;
}

analysis::RateSource rate_source(const std::string& name) {
  if (name == "pulsed_analytic") return analysis::RateSource::pulsed_analytic;
  if (name == "continuous_orthogonal") return analysis::RateSource::continuous_orthogonal;
  if (name == "continuous_stabilized") return analysis::RateSource::continuous_stabilized;
  fail(ErrorKind::invalid_argument, "unknown rate source '" + name + "'");
}

analysis::HeatmapSource heatmap_source(const std::string& name) {
  if (name == "continuous_analytic") return analysis::HeatmapSource::continuous_analytic;
  if (name == "pulsed_analytic") return analysis::HeatmapSource::pulsed_analytic;
  if (name == "lindblad_rk4") return analysis::HeatmapSource::lindblad_rk4;
  fail(ErrorKind::invalid_argument, "unknown heatmap source '" + name + "'");
}

std::size_t workers_or_default(std::size_t w) { return w > 0 ? w : ensemble::default_workers(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zeno and anti-Zeno dynamics of a measured qubit";

  static py::exception<Error> error(m, "ZenoError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string kind = to_string(e.kind());
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(kind + ": " + e.what());
      exc.attr("kind") = kind;
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, double>(), py::arg("omega_r"), py::arg("delta"), py::arg("gamma"))
      .def_property_readonly("omega_r", &ModelParams::omega_r)
      .def_property_readonly("delta", &ModelParams::delta)
      .def_property_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("omega", &ModelParams::omega)
      .def_property_readonly("theta", &ModelParams::theta)
      .def("with_gamma", &ModelParams::with_gamma)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(omega_r=" + io::format_double(p.omega_r()) +
               ", delta=" + io::format_double(p.delta()) + ", gamma=" + io::format_double(p.gamma()) + ")";
      });

  // Pulsed measurement.
  m.def("jump_probability", &pulsed::jump_probability);
  m.def("pulsed_gamma_mix", &pulsed::gamma_mix);
  m.def("pulsed_z", &pulsed::analytic_z_at, py::arg("params"), py::arg("t"));
  m.def(
      "record_probability",
      [](const ModelParams& p, const std::vector<int>& record) {
        return pulsed::record_probability({p, record.size(), 0, 0}, record);
      },
      py::arg("params"), py::arg("record"));
  m.def(
      "pulsed_trajectory",
      [](const ModelParams& p, std::size_t n_pulses, std::uint64_t seed) {
        return trajectory_dict(pulsed::simulate_trajectory({p, n_pulses, seed, 0}, QubitState::excited()));
      },
      py::arg("params"), py::arg("n_pulses"), py::arg("seed"));
  m.def(
      "pulsed_ensemble",
      [](const ModelParams& p, std::size_t n_pulses, std::size_t trajectories, std::uint64_t seed,
         std::size_t workers) {
        ensemble::EnsembleResult e;
        {
          py::gil_scoped_release release;
          e = ensemble::pulsed_ensemble({p, n_pulses, 0, 0}, trajectories, seed, workers_or_default(workers));
        }
        return ensemble_dict(e);
      },
      py::arg("params"), py::arg("n_pulses"), py::arg("trajectories"), py::arg("seed"),
      py::arg("workers") = 0);

  // Continuous measurement.
  m.def("readout_likelihood", &continuous::readout_likelihood, py::arg("r"), py::arg("level"),
        py::arg("gamma"), py::arg("dt"));
  m.def("default_dt", &continuous::ContinuousConfig::default_dt);
  m.def(
      "continuous_trajectory",
      [](const ModelParams& p, double t_final, std::uint64_t seed, std::optional<double> dt,
         std::size_t record_every) {
        const continuous::ContinuousConfig cfg{
            p, dt.value_or(continuous::ContinuousConfig::default_dt(p)), t_final, seed, std::nullopt,
            record_every};
        return trajectory_dict(continuous::simulate_trajectory(cfg, QubitState::excited()));
      },
      py::arg("params"), py::arg("t_final"), py::arg("seed"), py::arg("dt") = py::none(),
      py::arg("record_every") = 1);
  m.def(
      "continuous_ensemble",
      [](const ModelParams& p, double t_final, std::size_t trajectories, std::uint64_t seed,
         std::optional<double> dt, std::size_t record_every, std::size_t workers) {
        const continuous::ContinuousConfig cfg{
            p, dt.value_or(continuous::ContinuousConfig::default_dt(p)), t_final, 0, std::nullopt,
            record_every};
        ensemble::EnsembleResult e;
        {
          py::gil_scoped_release release;
          e = ensemble::continuous_ensemble(cfg, trajectories, seed, workers_or_default(workers));
        }
        return ensemble_dict(e);
      },
      py::arg("params"), py::arg("t_final"), py::arg("trajectories"), py::arg("seed"),
      py::arg("dt") = py::none(), py::arg("record_every") = 1, py::arg("workers") = 0);

  // Ensemble dynamics.
  m.def("orthogonal_z", &dynamics::orthogonal_z, py::arg("params"), py::arg("t"));
  m.def("gamma0_stabilized", &dynamics::gamma0_stabilized);
  m.def("gamma_mix_stabilized", &dynamics::gamma_mix_stabilized);
  m.def("critical_rate", &dynamics::critical_rate);
  m.def("orthogonal_rates", [](const ModelParams& p) {
    const auto s = dynamics::analytic_solution_orthogonal(p);
    py::dict d;
    d["regime"] = dynamics::to_string(s.regime);
    d["gamma_plus"] = s.gamma_plus;
    d["gamma_minus"] = s.gamma_minus;
    d["gamma_mix"] = s.gamma_mix;
    return d;
  });
  m.def(
      "lindblad_z",
      [](const ModelParams& p, double t_final, double dt, double gamma_one, std::size_t sample_every) {
        const auto e = ensemble::lindblad_ensemble({p, gamma_one}, t_final, dt, sample_every);
        return ensemble_dict(e);
      },
      py::arg("params"), py::arg("t_final"), py::arg("dt"), py::arg("gamma_one") = 0.0,
      py::arg("sample_every") = 1);
  m.def(
      "memory_kernel_z",
      [](const ModelParams& p, double t_final, double dt) {
        const auto s = dynamics::memory_kernel_z(p, t_final, dt);
        return py::make_tuple(s.times, s.values);
      },
      py::arg("params"), py::arg("t_final"), py::arg("dt"));

  // Analysis.
  m.def(
      "fit_decay",
      [](const std::vector<double>& t, const std::vector<double>& z, const std::string& method) {
        const auto fm = method == "peak" ? analysis::FitMethod::peak_envelope_fit
                                         : analysis::FitMethod::log_linear_fit;
        const auto r = analysis::fit_decay_envelope(t, z, fm);
        return py::make_tuple(r.value, r.std_error);
      },
      py::arg("t"), py::arg("z"), py::arg("method") = "log_linear");
  m.def(
      "response_scan",
      [](const ModelParams& base, const std::vector<double>& gammas, const std::string& source) {
        const auto c = analysis::zeno_response_scan(gammas, rate_source(source), base);
        std::vector<std::string> labels;
        for (auto l : c.regime_labels) labels.emplace_back(analysis::to_string(l));
        py::dict d;
        d["gamma"] = c.gamma_grid;
        d["gamma_mix"] = c.gamma_mix_values;
        d["response"] = c.response_values;
        d["regime"] = labels;
        const auto loc = analysis::locate_critical_rate(c);
        d["gamma_crit"] = loc ? py::cast(loc->value) : py::none();
        return d;
      },
      py::arg("base"), py::arg("gammas"), py::arg("source"));
  m.def("log_grid", &analysis::log_grid);
  m.def(
      "heatmap",
      [](const ModelParams& base, const std::vector<double>& ratios, double t_final, std::size_t n_times,
         const std::string& source) {
        const auto h = analysis::heatmap_grid(base, ratios, t_final, n_times, heatmap_source(source));
        return py::make_tuple(h.gamma_over_crit, h.times, h.values);
      },
      py::arg("base"), py::arg("gamma_over_crit"), py::arg("t_final"), py::arg("n_times"),
      py::arg("source") = "lindblad_rk4");

  // Whole runs.
  m.def(
      "run_config",
      [](const std::string& text, const std::string& format) {
        const config::RunConfig cfg = config::parse_config(text);
        const runner::Artifacts a = runner::compute(cfg);
        const bool csv = format == "csv";
        if (a.heatmap) {
          io::check_finite(*a.heatmap);
          return csv ? io::matrix_csv(*a.heatmap, a.meta) : io::matrix_json(*a.heatmap, a.meta);
        }
        io::check_finite(a.table);
        return csv ? io::series_csv(a.table, a.meta) : io::series_json(a.table, a.meta);
      },
      py::arg("text"), py::arg("format") = "csv");
  m.def(
      "validate",
      [](int id, std::uint64_t seed) {
        validation::CheckResult r;
        {
          py::gil_scoped_release release;
          r = validation::run_check(id, {seed, 0});
        }
        return py::make_tuple(r.passed, validation::format(r));
      },
      py::arg("id"), py::arg("seed") = 2026);
  m.attr("check_count") = validation::check_count();
  m.attr("schema_version") = std::string(io::kSchemaVersion);
}
