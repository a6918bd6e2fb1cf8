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

#include "zeno/config.hpp"
#include "zeno/error.hpp"
#include "zeno/runner.hpp"
#include "zeno/validation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using zeno::config::Entry;
using zeno::config::KeyValues;
using zeno::config::Mode;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "key = value configuration file");
  app->add_option("--seed", f.seed, "master seed (u64)");
  app->add_option("--workers", f.workers, "worker threads, 0 = default");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", f.out, "output path, stdout when omitted");
  app->add_option("--set", f.sets, "override one key, key=value (repeatable)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) zeno::fail(zeno::ErrorKind::io, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// File entries, then --set overrides, then the dedicated flags.
KeyValues collect(const CommonFlags& f) {
  KeyValues kv;
  if (!f.config_path.empty()) kv = zeno::config::parse_key_values(read_file(f.config_path), f.config_path);
  for (const std::string& s : f.sets) {
    auto [key, entry] = zeno::config::parse_override(s);
    kv[key] = entry;
  }
  if (f.seed) kv["seed"] = {std::to_string(*f.seed), "--seed"};
  if (f.workers) kv["workers"] = {std::to_string(*f.workers), "--workers"};
  if (f.format) kv["format"] = {*f.format, "--format"};
  if (f.out) kv["out"] = {*f.out, "--out"};
  return kv;
}

// The subcommand fixes the mode; a config that names another mode is rejected.
void apply_mode(KeyValues& kv, const std::string& mode, const std::string& command) {
  const auto it = kv.find("mode");
  if (it != kv.end() && it->second.value != mode) {
    zeno::fail(zeno::ErrorKind::parse, "mode=" + it->second.value + " (" + it->second.origin +
                                           ") conflicts with subcommand '" + command +
                                           "' (mode " + mode + ")");
  }
  kv["mode"] = {mode, command};
}

int execute(KeyValues kv) {
  const zeno::config::RunConfig cfg = zeno::config::build(kv);
  const zeno::runner::RunSummary s = zeno::runner::run(cfg);
  std::cerr << zeno::runner::summary_line(s) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeno and anti-Zeno dynamics of a measured qubit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string sim_kind = "pulsed";
  std::string ens_kind = "ode";

  CLI::App* simulate = app.add_subcommand("simulate", "single trajectory (pulsed, continuous, poisson)");
  simulate->add_option("kind", sim_kind, "trajectory type")
      ->check(CLI::IsMember({"pulsed", "continuous", "poisson"}));
  add_common(simulate, flags);

  CLI::App* ensemble = app.add_subcommand("ensemble", "nonselective average (ode, pulsed, continuous, poisson)");
  ensemble->add_option("kind", ens_kind, "ensemble type")
      ->check(CLI::IsMember({"ode", "pulsed", "continuous", "poisson"}));
  add_common(ensemble, flags);

  CLI::App* sweep = app.add_subcommand("sweep", "P1(gamma, t) heatmap");
  add_common(sweep, flags);

  CLI::App* rates = app.add_subcommand("rates", "mixing rates and Zeno response over a gamma grid");
  add_common(rates, flags);

  zeno::validation::Options vopts;
  std::optional<int> only;
  CLI::App* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--seed", vopts.seed, "master seed for Monte Carlo checks");
  validate->add_option("--workers", vopts.workers, "worker threads, 0 = default");
  validate->add_option("--only", only, "run a single check by id")
      ->check(CLI::Range(1, zeno::validation::check_count()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : zeno::exit_code(zeno::ErrorKind::parse);
  }

  try {
    if (*validate) {
      bool ok = true;
      auto report = [&](const zeno::validation::CheckResult& r) {
        ok &= r.passed;
        std::cout << zeno::validation::format(r) << std::endl;
      };
      if (only) {
        report(zeno::validation::run_check(*only, vopts));
      } else {
        zeno::validation::run_all(vopts, report);
      }
      return ok ? 0 : 1;
    }

    KeyValues kv = collect(flags);
    if (*simulate) {
      static const std::map<std::string, Mode> modes{{"pulsed", Mode::pulsed_traj},
                                                     {"continuous", Mode::continuous_traj},
                                                     {"poisson", Mode::poisson_ensemble}};
      apply_mode(kv, zeno::config::to_string(modes.at(sim_kind)), "simulate " + sim_kind);
      if (const auto it = kv.find("trajectories"); it != kv.end() && it->second.value != "1") {
        zeno::fail(zeno::ErrorKind::parse, "trajectories (" + it->second.origin +
                                               ") must be 1 for simulate; use ensemble");
      }
    } else if (*ensemble) {
      static const std::map<std::string, Mode> modes{{"ode", Mode::ensemble_ode},
                                                     {"pulsed", Mode::pulsed_traj},
                                                     {"continuous", Mode::continuous_traj},
                                                     {"poisson", Mode::poisson_ensemble}};
      apply_mode(kv, zeno::config::to_string(modes.at(ens_kind)), "ensemble " + ens_kind);
      if (ens_kind != "ode" && !kv.contains("trajectories")) kv["trajectories"] = {"1000", "ensemble default"};
    } else if (*sweep) {
      apply_mode(kv, zeno::config::to_string(Mode::sweep_heatmap), "sweep");
    } else if (*rates) {
      apply_mode(kv, zeno::config::to_string(Mode::rates_scan), "rates");
    }
    return execute(std::move(kv));
  } catch (const zeno::Error& e) {
    std::cerr << "error[" << zeno::to_string(e.kind()) << "]: " << e.what() << '\n';
    return zeno::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
