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
#include "zeno/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace zeno::config {

namespace {

// Shortest text that parses back to the same double.
std::string echo_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& keys() {
  static const std::vector<std::string> k = {
      "mode",        "omega_r",    "delta",        "gamma",        "gamma_grid",
      "gamma_one",   "t1_direction", "t_final",    "dt",           "n_pulses",
      "substeps",    "trajectories", "seed",       "workers",      "format",
      "out",         "filter_tau", "t_points",     "sample_every", "rate_source",
      "heatmap_source", "time_unit",
  };
  return k;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(const std::string& key, const Entry& e, const std::string& why) {
  fail(ErrorKind::parse, e.origin + ": key '" + key + "': " + why);
}

double parse_real(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto res = std::from_chars(b, end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    bad(key, e, "malformed number '" + e.value + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const Entry& e) {
  std::uint64_t v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto res = std::from_chars(b, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    bad(key, e, "expected a non-negative integer, got '" + e.value + "'");
  }
  return v;
}

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& key, const Entry& e,
                const std::pair<const char*, Enum> (&table)[N]) {
  std::string options;
  for (const auto& [name, value] : table) {
    if (e.value == name) return value;
    options += options.empty() ? name : std::string("|") + name;
  }
  bad(key, e, "expected one of " + options + ", got '" + e.value + "'");
}

constexpr std::pair<const char*, Mode> kModes[] = {
    {"pulsed_traj", Mode::pulsed_traj},       {"continuous_traj", Mode::continuous_traj},
    {"ensemble_ode", Mode::ensemble_ode},     {"poisson_ensemble", Mode::poisson_ensemble},
    {"sweep_heatmap", Mode::sweep_heatmap},   {"rates_scan", Mode::rates_scan},
};
constexpr std::pair<const char*, dynamics::T1Direction> kDirections[] = {
    {"toward_state_0", dynamics::T1Direction::toward_state_0},
    {"toward_state_1", dynamics::T1Direction::toward_state_1},
};
constexpr std::pair<const char*, io::Format> kFormats[] = {
    {"csv", io::Format::csv},
    {"json", io::Format::json},
};
constexpr std::pair<const char*, analysis::RateSource> kRateSources[] = {
    {"pulsed_analytic", analysis::RateSource::pulsed_analytic},
    {"continuous_orthogonal", analysis::RateSource::continuous_orthogonal},
    {"continuous_stabilized", analysis::RateSource::continuous_stabilized},
};
constexpr std::pair<const char*, analysis::HeatmapSource> kHeatmapSources[] = {
    {"continuous_analytic", analysis::HeatmapSource::continuous_analytic},
    {"pulsed_analytic", analysis::HeatmapSource::pulsed_analytic},
    {"lindblad_rk4", analysis::HeatmapSource::lindblad_rk4},
};
constexpr std::pair<const char*, TimeUnit> kTimeUnits[] = {
    {"inverse_omega_r", TimeUnit::inverse_omega_r},
    {"rabi_period", TimeUnit::rabi_period},
};

template <class Enum, std::size_t N>
std::string name_of(Enum v, const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (value == v) return name;
  }
  return "unknown";
}

}  // namespace

const char* to_string(Mode m) {
  for (const auto& [name, value] : kModes) {
    if (value == m) return name;
  }
  return "unknown";
}

std::vector<double> GridSpec::values() const {
  return logarithmic ? analysis::log_grid(start, stop, count)
                     : analysis::lin_grid(start, stop, count);
}

std::string GridSpec::text() const {
  return std::string(logarithmic ? "log" : "lin") + ":" + echo_double(start) + ":" +
         echo_double(stop) + ":" + std::to_string(count);
}

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = text.find(':', pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  auto invalid = [&](const std::string& why) {
    fail(ErrorKind::parse, "grid spec '" + std::string(text) + "': " + why);
  };
  if (parts.size() != 4) invalid("expected kind:start:stop:count");
  GridSpec g;
  if (parts[0] == "log") {
    g.logarithmic = true;
  } else if (parts[0] == "lin") {
    g.logarithmic = false;
  } else {
    invalid("kind must be log or lin");
  }
  auto real = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      invalid("malformed number '" + std::string(s) + "'");
    }
    return v;
  };
  g.start = real(parts[1]);
  g.stop = real(parts[2]);
  std::size_t n = 0;
  const auto res = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
  if (res.ec != std::errc() || res.ptr != parts[3].data() + parts[3].size()) {
    invalid("malformed count");
  }
  g.count = n;
  if (!(g.start < g.stop)) invalid("start must be below stop");
  if (g.count < 2) invalid("count must be >= 2");
  if (g.logarithmic && !(g.start > 0.0)) invalid("log grid needs start > 0");
  return g;
}

ModelParams RunConfig::model() const {
  if (!gamma) fail(ErrorKind::configuration, "key 'gamma' is required for this mode");
  return {omega_r, delta, *gamma};
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  auto opt_real = [](const std::optional<double>& v) {
    return v ? echo_double(*v) : std::string("auto");
  };
  e.emplace_back("mode", to_string(mode));
  e.emplace_back("omega_r", echo_double(omega_r));
  e.emplace_back("delta", echo_double(delta));
  e.emplace_back("gamma", opt_real(gamma));
  e.emplace_back("gamma_grid", gamma_grid.text());
  e.emplace_back("gamma_one", echo_double(gamma_one));
  e.emplace_back("t1_direction", name_of(t1_direction, kDirections));
  e.emplace_back("t_final", echo_double(t_final));
  e.emplace_back("dt", opt_real(dt));
  e.emplace_back("n_pulses", n_pulses ? std::to_string(*n_pulses) : "auto");
  e.emplace_back("substeps", std::to_string(substeps));
  e.emplace_back("trajectories", std::to_string(trajectories));
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("filter_tau", filter_tau ? echo_double(*filter_tau) : "none");
  e.emplace_back("t_points", std::to_string(t_points));
  e.emplace_back("sample_every", std::to_string(sample_every));
  e.emplace_back("rate_source", rate_source ? name_of(*rate_source, kRateSources) : "auto");
  e.emplace_back("heatmap_source",
                 heatmap_source ? name_of(*heatmap_source, kHeatmapSources) : "auto");
  // Times above are already converted to 1/omega_r.
  e.emplace_back("time_unit", "inverse_omega_r");
  return e;
}

KeyValues parse_key_values(std::string_view text, std::string_view source) {
  KeyValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = std::string(source) + " line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::parse, origin + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail(ErrorKind::parse, origin + ": missing key");
    if (out.count(key)) {
      fail(ErrorKind::parse, origin + ": key '" + key + "' given twice (first at " +
                                 out.at(key).origin + ")");
    }
    out[key] = {value, origin};
  }
  return out;
}

std::pair<std::string, Entry> parse_override(std::string_view flag) {
  const auto eq = flag.find('=');
  if (eq == std::string_view::npos) {
    fail(ErrorKind::parse, "--set " + std::string(flag) + ": expected key=value");
  }
  const std::string key(trim(flag.substr(0, eq)));
  if (key.empty()) fail(ErrorKind::parse, "--set " + std::string(flag) + ": missing key");
  return {key, {std::string(trim(flag.substr(eq + 1))), "--set " + key}};
}

RunConfig build(const KeyValues& entries) {
  RunConfig c;
  for (const auto& [key, e] : entries) {
    if (std::find(keys().begin(), keys().end(), key) == keys().end()) {
      fail(ErrorKind::parse, e.origin + ": unknown key '" + key + "'");
    }
    if (e.value.empty()) bad(key, e, "empty value");
  }
  auto get = [&](const char* key) -> const Entry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto nonneg = [&](const char* key, double v) {
    if (v < 0.0) bad(key, *get(key), "must be >= 0");
    return v;
  };
  auto positive = [&](const char* key, double v) {
    if (!(v > 0.0)) bad(key, *get(key), "must be > 0");
    return v;
  };

  if (auto e = get("mode")) c.mode = parse_enum("mode", *e, kModes);
  if (auto e = get("omega_r")) c.omega_r = nonneg("omega_r", parse_real("omega_r", *e));
  if (auto e = get("delta")) c.delta = parse_real("delta", *e);
  if (auto e = get("gamma")) c.gamma = nonneg("gamma", parse_real("gamma", *e));
  if (auto e = get("gamma_grid")) {
    try {
      c.gamma_grid = GridSpec::parse(e->value);
    } catch (const Error& err) {
      bad("gamma_grid", *e, err.what());
    }
  }
  if (auto e = get("gamma_one")) c.gamma_one = nonneg("gamma_one", parse_real("gamma_one", *e));
  if (auto e = get("t1_direction")) c.t1_direction = parse_enum("t1_direction", *e, kDirections);
  if (auto e = get("t_final")) c.t_final = positive("t_final", parse_real("t_final", *e));
  if (auto e = get("dt")) c.dt = positive("dt", parse_real("dt", *e));
  if (auto e = get("n_pulses")) c.n_pulses = parse_unsigned("n_pulses", *e);
  if (auto e = get("substeps")) c.substeps = parse_unsigned("substeps", *e);
  if (auto e = get("trajectories")) {
    c.trajectories = parse_unsigned("trajectories", *e);
    if (c.trajectories < 1) bad("trajectories", *e, "must be >= 1");
  }
  if (auto e = get("seed")) c.seed = parse_unsigned("seed", *e);
  if (auto e = get("workers")) c.workers = parse_unsigned("workers", *e);
  if (auto e = get("format")) c.format = parse_enum("format", *e, kFormats);
  if (auto e = get("out")) c.out = e->value;
  if (auto e = get("filter_tau")) c.filter_tau = positive("filter_tau", parse_real("filter_tau", *e));
  if (auto e = get("t_points")) {
    c.t_points = parse_unsigned("t_points", *e);
    if (c.t_points < 2) bad("t_points", *e, "must be >= 2");
  }
  if (auto e = get("sample_every")) {
    c.sample_every = parse_unsigned("sample_every", *e);
    if (c.sample_every < 1) bad("sample_every", *e, "must be >= 1");
  }
  if (auto e = get("rate_source")) c.rate_source = parse_enum("rate_source", *e, kRateSources);
  if (auto e = get("heatmap_source")) {
    c.heatmap_source = parse_enum("heatmap_source", *e, kHeatmapSources);
  }
  if (auto e = get("time_unit")) c.time_unit = parse_enum("time_unit", *e, kTimeUnits);

  if (c.time_unit == TimeUnit::rabi_period) {
    if (!(c.omega_r > 0.0)) {
      bad("time_unit", *get("time_unit"), "rabi_period needs omega_r > 0");
    }
    const double period = 2.0 * std::numbers::pi / c.omega_r;
    c.t_final *= period;
    if (c.dt) *c.dt *= period;
    if (c.filter_tau) *c.filter_tau *= period;
    c.time_unit = TimeUnit::inverse_omega_r;
  }

  const bool needs_gamma = c.mode != Mode::sweep_heatmap && c.mode != Mode::rates_scan;
  if (needs_gamma && !c.gamma) {
    fail(ErrorKind::parse, "key 'gamma' is required for mode " + std::string(to_string(c.mode)));
  }
  return c;
}

RunConfig parse_config(std::string_view text) { return build(parse_key_values(text)); }

std::vector<std::string> known_keys() { return keys(); }

}  // namespace zeno::config
