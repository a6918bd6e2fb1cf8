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

#include "zeno/validation.hpp"

#include "zeno/analysis.hpp"
#include "zeno/continuous.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/ensemble.hpp"
#include "zeno/error.hpp"
#include "zeno/pulsed.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace zeno::validation {

namespace {

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double rel(double value, double expected) { return std::abs(value / expected - 1.0); }

std::size_t workers_of(const Options& o) {
  return o.workers > 0 ? o.workers : ensemble::default_workers();
}

std::vector<double> z_of(const ensemble::EnsembleResult& r) {
  std::vector<double> z;
  for (const Bloch& b : r.mean) z.push_back(b.z);
  return z;
}

std::vector<double> z_se_of(const ensemble::EnsembleResult& r) {
  std::vector<double> s;
  for (const Bloch& b : r.std_error) s.push_back(b.z);
  return s;
}

/// Envelope policy for deterministic curves: fit the local maxima when there
/// are at least three inside the window, otherwise ln|z| directly.
analysis::RateEstimate envelope(const std::vector<double>& t, const std::vector<double>& z) {
  try {
    return analysis::fit_decay_envelope(t, z, analysis::FitMethod::peak_envelope_fit);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::insufficient_data) throw;
  }
  return analysis::fit_decay_envelope(t, z, analysis::FitMethod::log_linear_fit);
}

/// RK4 z(t) from |1> long enough for |z| to fall below the fit window.
analysis::RateEstimate lindblad_envelope(const ModelParams& m, double expected_rate) {
  const double t_final = std::log(40.0) / expected_rate + 10.0 / std::max(m.gamma(), 1e-3);
  const double dt = 0.02 / std::max(m.omega(), 2.0 * m.gamma());
  const auto sample = static_cast<std::size_t>(std::max(1.0, std::floor(0.02 / expected_rate / dt / 50.0)));
  const dynamics::DensitySeries s = dynamics::integrate_master_equation(
      {m}, QubitState::excited().density(), t_final, dt, sample);
  std::vector<double> z;
  for (const Operator& rho : s.states) z.push_back(bloch_of(rho).z);
  return envelope(s.times, z);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Two-sided KS statistic of `samples` against the normal law N(mu, sigma^2).
double ks_normal(std::vector<double> samples, double mu, double sigma) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf((samples[i] - mu) / sigma);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double sample_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

// 1. Pulsed survival after four measurements at omega_r/gamma = pi/4.
CheckResult pulsed_survival(const Options& o) {
  CheckResult r{1, "pulsed exact survival", false, {}};
  const ModelParams m(1.0, 0.0, 4.0 / std::numbers::pi);
  constexpr std::size_t kPulses = 4;
  constexpr std::size_t kRuns = 100000;
  const pulsed::PulsedConfig cfg{m, kPulses, 0, 0};

  // Oracle: sum of record probabilities over all 2^4 records ending in 1.
  double enumerated = 0.0;
  for (unsigned bits = 0; bits < (1u << kPulses); ++bits) {
    std::array<int, kPulses> rec{};
    for (std::size_t k = 0; k < kPulses; ++k) rec[k] = (bits >> k) & 1u;
    if (rec.back() == 1) enumerated += pulsed::record_probability(cfg, rec);
  }
  const ensemble::EnsembleResult e = ensemble::pulsed_ensemble(cfg, kRuns, o.seed, workers_of(o));
  const double p = e.p1.back();
  const double target = 5.0 / 8.0;
  const double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(kRuns));
  r.passed = std::abs(enumerated - target) < 1e-12 && std::abs(p - target) <= 3.0 * sigma;
  r.detail = "P1=" + num(p) + " enumerated=" + num(enumerated, 12) + " target=0.625 |d|=" +
             num(std::abs(p - target), 3) + " <= 3sigma=" + num(3.0 * sigma, 3);
  return r;
}

// 2. Diffusive ensemble mixing rate, orthogonal drive, gamma = 2 omega_r.
CheckResult continuous_mixing(const Options& o) {
  CheckResult r{2, "orthogonal continuous mixing rate", false, {}};
  const ModelParams m(1.0, 0.0, 2.0);
  const double dt = continuous::ContinuousConfig::default_dt(m);
  const continuous::ContinuousConfig cfg{m, dt, 16.0, 0, std::nullopt, 4};
  const ensemble::EnsembleResult e =
      ensemble::continuous_ensemble(cfg, 10000, o.seed, workers_of(o));
  const analysis::RateEstimate fit = analysis::fit_decay_envelope(
      e.times, z_of(e), analysis::FitMethod::log_linear_fit, {}, z_se_of(e));
  const double expected = 2.0 - std::sqrt(3.0);
  r.passed = rel(fit.value, expected) <= 0.05;
  r.detail = "fit=" + num(fit.value) + " +/- " + num(fit.std_error, 2) + " expected=" +
             num(expected) + " rel=" + num(100.0 * rel(fit.value, expected), 3) + "% (<= 5%)";
  return r;
}

// 3. Critical rate from analytic response scans.
CheckResult critical_rate_location(const Options&) {
  CheckResult r{3, "critical-rate location", false, {}};
  const ModelParams ortho(1.0, 0.0, 0.0);
  const ModelParams stab(1.0, 3.0, 0.0);
  auto locate = [](const ModelParams& base, analysis::RateSource src) {
    const double crit = dynamics::critical_rate(base);
    const std::vector<double> grid = analysis::log_grid(0.1 * crit, 10.0 * crit, 1001);
    const auto loc = analysis::locate_critical_rate(analysis::zeno_response_scan(grid, src, base));
    if (!loc) fail(ErrorKind::insufficient_data, "no sign change in the response");
    return loc->value;
  };
  const double a = locate(ortho, analysis::RateSource::continuous_orthogonal);
  const double b = locate(stab, analysis::RateSource::continuous_stabilized);
  const double b_expected = std::sqrt(10.0) / 2.0;
  r.passed = rel(a, 1.0) <= 0.02 && rel(b, b_expected) <= 0.02;
  r.detail = "orthogonal=" + num(a) + " (expected 1, rel " + num(100.0 * rel(a, 1.0), 3) +
             "%) stabilized=" + num(b) + " (expected " + num(b_expected) + ", rel " +
             num(100.0 * rel(b, b_expected), 3) + "%)";
  return r;
}

// 4. RK4 envelope fits against the broadened stabilized rate.
CheckResult stabilized_rate_law(const Options&) {
  CheckResult r{4, "stabilized rate law", false, {}};
  const ModelParams base(1.0, 3.0, 0.0);
  const double crit = dynamics::critical_rate(base);
  double worst = 0.0;
  double worst_at = 0.0;
  int peak_fits = 0;
  const std::vector<double> grid = analysis::log_grid(0.1, 10.0, 41);
  for (double s : grid) {
    const ModelParams m = base.with_gamma(s * crit);
    const double expected = dynamics::gamma_mix_stabilized(m);
    const analysis::RateEstimate fit = lindblad_envelope(m, expected);
    if (fit.method == analysis::FitMethod::peak_envelope_fit) ++peak_fits;
    if (rel(fit.value, expected) > worst) {
      worst = rel(fit.value, expected);
      worst_at = s;
    }
  }
  r.passed = worst <= 0.05;
  r.detail = "41 points on gamma/gamma_crit in [0.1, 10]: worst rel=" + num(100.0 * worst, 3) +
             "% at " + num(worst_at, 4) + " (<= 5%), peak fits=" + std::to_string(peak_fits);
  return r;
}

// 5. Log-axis symmetry of Gamma_0 about gamma_crit.
CheckResult sech_symmetry(const Options&) {
  CheckResult r{5, "sech symmetry", false, {}};
  const ModelParams base(1.0, 3.0, 0.0);
  const double crit = dynamics::critical_rate(base);
  double worst = 0.0;
  double worst_form = 0.0;
  for (double s : {2.0, 5.0, 10.0}) {
    const double hi = dynamics::gamma0_stabilized(base.with_gamma(s * crit));
    const double lo = dynamics::gamma0_stabilized(base.with_gamma(crit / s));
    // At gamma = s gamma_crit the rate reduces to (omega_r^2 / 2 omega) sech(ln s).
    const double sech =
        base.omega_r() * base.omega_r() / (2.0 * base.omega()) / std::cosh(std::log(s));
    worst = std::max(worst, std::abs(hi - lo));
    worst_form = std::max(worst_form, std::abs(hi - sech));
  }
  r.passed = worst <= 1e-12 && worst_form <= 1e-12;
  r.detail = "max |G0(s g_c) - G0(g_c/s)|=" + num(worst, 3) + " max |G0 - sech form|=" +
             num(worst_form, 3) + " for s in {2,5,10} (<= 1e-12)";
  return r;
}

// 6. Pulsed and continuous rates at gamma = 20 omega_r approach omega_r^2/2 gamma.
CheckResult asymptotic_universality(const Options&) {
  CheckResult r{6, "asymptotic universality", false, {}};
  constexpr double kGamma = 20.0;
  const double target = 1.0 / (2.0 * kGamma);
  double worst = 0.0;
  std::string detail;
  for (double delta : {0.0, 3.0}) {
    const ModelParams m(1.0, delta, kGamma);
    const double pulsed_rate = pulsed::gamma_mix(m);
    // Fit of the exact stroboscopic z, one point per pulse.
    std::vector<double> t, z;
    for (std::size_t n = 0; n <= 4000; ++n) {
      t.push_back(static_cast<double>(n) / kGamma);
      z.push_back(pulsed::analytic_z(m, n, 0.0));
    }
    const double pulsed_fit =
        analysis::fit_decay_envelope(t, z, analysis::FitMethod::log_linear_fit).value;
    const double cont_rate = delta == 0.0 ? dynamics::analytic_solution_orthogonal(m).gamma_mix
                                          : dynamics::gamma_mix_stabilized(m);
    const double cont_fit = lindblad_envelope(m, cont_rate).value;
    for (double v : {pulsed_rate, pulsed_fit, cont_rate, cont_fit}) {
      worst = std::max(worst, rel(v, target));
    }
    detail += "delta=" + num(delta, 2) + ": pulsed=" + num(pulsed_rate) + "/fit " +
              num(pulsed_fit) + " continuous=" + num(cont_rate) + "/rk4 " + num(cont_fit) + "; ";
  }
  r.passed = worst <= 0.05;
  r.detail = detail + "target=" + num(target) + " worst rel=" + num(100.0 * worst, 3) + "% (<= 5%)";
  return r;
}

// 7. Poisson-randomised projective dephasing averages to the Lindblad P_1.
CheckResult poisson_equivalence(const Options& o) {
  CheckResult r{7, "Poisson equivalence", false, {}};
  const ModelParams m(1.0, 0.0, 2.0);
  constexpr double kT = 10.0;
  constexpr double kDt = 0.025;
  const dynamics::PoissonConfig cfg{{m}, kDt, kT, 0, 1};
  const ensemble::EnsembleResult e = ensemble::poisson_ensemble(cfg, 100000, o.seed, workers_of(o));
  const dynamics::DensitySeries ref =
      dynamics::integrate_master_equation({m}, QubitState::excited().density(), kT, kDt / 10.0, 10);
  if (ref.times.size() != e.times.size()) {
    fail(ErrorKind::contract_violation, "Poisson and Lindblad grids differ");
  }
  double sup = 0.0;
  double sup_closed = 0.0;
  for (std::size_t i = 0; i < e.times.size(); ++i) {
    sup = std::max(sup, std::abs(e.p1[i] - std::real(ref.states[i](0, 0))));
    sup_closed = std::max(sup_closed,
                          std::abs(e.p1[i] - 0.5 * (1.0 + dynamics::orthogonal_z(m, e.times[i]))));
  }
  r.passed = sup <= 0.01 && sup_closed <= 0.01;
  r.detail = "1e5 runs, sup|P1 - P1_lindblad|=" + num(sup, 3) + " sup|P1 - closed form|=" +
             num(sup_closed, 3) + " on t in [0, 10] (<= 0.01)";
  return r;
}

// 8. Readout histograms and averaged-signal variance.
CheckResult readout_statistics(const Options& o) {
  CheckResult r{8, "readout statistics", false, {}};
  constexpr std::size_t kDraws = 100000;
  const double gamma = 1.0;
  const double dt = 0.05;
  const double sigma = 1.0 / std::sqrt(4.0 * gamma * dt);
  const double ks_limit = 1.63 / std::sqrt(static_cast<double>(kDraws));
  double ks_worst = 0.0;
  Rng rng = make_rng(trajectory_seed(o.seed, 8));
  for (const QubitState& s : {QubitState::excited(), QubitState::ground()}) {
    std::vector<double> draws;
    draws.reserve(kDraws);
    for (std::size_t i = 0; i < kDraws; ++i) {
      draws.push_back(continuous::sample_readout(s, gamma, dt, rng).value);
    }
    ks_worst = std::max(ks_worst, ks_normal(std::move(draws), s.z(), sigma));
  }

  // Time-averaged readout of a monitored eigenstate over T, two step sizes.
  constexpr std::size_t kReps = 20000;
  constexpr double kT = 1.0;
  const ModelParams m(0.0, 0.0, gamma);
  const double expected = 1.0 / (4.0 * gamma * kT);
  std::array<double, 2> variances{};
  const std::array<double, 2> steps{0.01, 0.001};
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto n = static_cast<std::size_t>(std::llround(kT / steps[k]));
    std::vector<double> means(kReps);
    for (std::size_t rep = 0; rep < kReps; ++rep) {
      continuous::Stepper stepper(m, steps[k], trajectory_seed(o.seed + 1 + k, rep),
                                  QubitState::excited());
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += stepper.step();
      means[rep] = sum / static_cast<double>(n);
    }
    variances[k] = sample_variance(means);
  }
  const double worst_var = std::max(rel(variances[0], expected), rel(variances[1], expected));
  const double ratio = rel(variances[0], variances[1]);
  r.passed = ks_worst < ks_limit && worst_var <= 0.03 && ratio <= 0.03;
  r.detail = "KS=" + num(ks_worst, 3) + " (< " + num(ks_limit, 3) + "), var(dt=0.01)=" +
             num(variances[0]) + " var(dt=0.001)=" + num(variances[1]) + " expected " +
             num(expected) + " (<= 3%, mutual " + num(100.0 * ratio, 3) + "%)";
  return r;
}

// 9. Telegraph jump rate and its relation to the ensemble mixing rate.
CheckResult jump_rate_check(const Options& o) {
  CheckResult r{9, "jump-rate telegraph", false, {}};
  const ModelParams m(1.0, 0.0, 5.0);
  const double expected = 1.0 / (4.0 * m.gamma());
  const pulsed::PulsedConfig long_run{m, static_cast<std::size_t>(std::llround(200.0 * m.gamma())),
                                      0, 0};
  const analysis::JumpCounts counts = ensemble::parallel_blocks<analysis::JumpCounts>(
      500, workers_of(o), [] { return analysis::JumpCounts{}; },
      [&](analysis::JumpCounts& acc, std::size_t i) {
        pulsed::PulsedConfig c = long_run;
        c.seed = trajectory_seed(o.seed, i);
        acc += analysis::count_jumps(pulsed::simulate_trajectory(c, QubitState::excited()));
      });
  const analysis::JumpRateEstimate jump = analysis::jump_rate_from_counts(counts);

  const pulsed::PulsedConfig short_run{m, static_cast<std::size_t>(std::llround(40.0 * m.gamma())),
                                       0, 0};
  const ensemble::EnsembleResult e =
      ensemble::pulsed_ensemble(short_run, 10000, o.seed + 1, workers_of(o));
  const analysis::RateEstimate mix = analysis::fit_decay_envelope(
      e.times, z_of(e), analysis::FitMethod::log_linear_fit, {}, z_se_of(e));
  const double j = jump.combined.value;
  r.passed = rel(j, expected) <= 0.10 && rel(2.0 * j, mix.value) <= 0.15;
  r.detail = "Gamma_jump=" + num(j) + " +/- " + num(jump.combined.std_error, 2) + " expected " +
             num(expected) + " (rel " + num(100.0 * rel(j, expected), 3) + "% <= 10%); 2 Gamma_jump=" +
             num(2.0 * j) + " vs fitted Gamma_mix=" + num(mix.value) + " (rel " +
             num(100.0 * rel(2.0 * j, mix.value), 3) + "% <= 15%)";
  return r;
}

// 10. Markovian T1 decay has no Zeno response.
CheckResult null_response(const Options&) {
  CheckResult r{10, "null Zeno response", false, {}};
  const dynamics::LindbladParams p{ModelParams(0.0, 0.0, 0.0), 0.1,
                                   dynamics::T1Direction::toward_state_0};
  const std::vector<double> grid{1.0, 2.0, 4.0};
  const std::vector<double> rates = dynamics::t1_decay_rates(p, grid);
  const std::vector<double> response = dynamics::zeno_response_t1(p, grid);
  double worst_rate = 0.0;
  double worst_resp = 0.0;
  for (double v : rates) worst_rate = std::max(worst_rate, rel(v, p.gamma_one));
  for (double v : response) worst_resp = std::max(worst_resp, std::abs(v));
  r.passed = worst_rate <= 1e-3 && worst_resp < 1e-6;
  r.detail = "rates=" + num(rates[0], 10) + "," + num(rates[1], 10) + "," + num(rates[2], 10) +
             " worst rel=" + num(worst_rate, 3) + " (<= 1e-3) max |response|=" +
             num(worst_resp, 3) + " (< 1e-6)";
  return r;
}

// 11. Norm, trace and positivity bounds; kernel vs RK4; POVM completeness.
CheckResult invariant_suite(const Options& o) {
  CheckResult r{11, "invariant suite", false, {}};
  std::ostringstream d;
  bool ok = true;

  {  // 1e6 composed unitary steps
    const ModelParams m(1.0, 0.7, 0.0);
    const Operator u = unitary_propagator(m, 1e-3);
    QubitState pure = QubitState::excited();
    Operator rho = QubitState::from_bloch({0.3, -0.2, 0.5}).density();
    Amplitudes psi = pure.amplitudes();
    for (int i = 0; i < 1000000; ++i) {
      psi = u * psi;
      rho = u * rho * u.adjoint();
    }
    const double norm_err = std::abs(psi.squaredNorm() - 1.0);
    const double trace_err = std::abs(rho.trace() - Complex(1.0));
    ok &= norm_err <= 1e-10 && trace_err <= 1e-10;
    d << "unitary norm/trace drift " << num(norm_err, 2) << "/" << num(trace_err, 2) << "; ";
  }
  {  // purity of a diffusive trajectory at every step
    const ModelParams m(1.0, 1.0, 1.0);
    const continuous::ContinuousConfig cfg{m, 1e-3, 100.0, trajectory_seed(o.seed, 11), std::nullopt};
    const TrajectoryRecord rec = continuous::simulate_trajectory(cfg, QubitState::excited());
    double worst = 0.0;
    for (const Bloch& b : rec.states) worst = std::max(worst, std::abs(b.length() - 1.0));
    ok &= worst <= 1e-8;
    d << "trajectory |Bloch|-1 " << num(worst, 2) << "; ";
  }
  {  // Lindblad trace, Hermiticity and positivity
    double trace_err = 0.0;
    double herm_err = 0.0;
    double min_eig = 1.0;
    for (const dynamics::LindbladParams& p :
         {dynamics::LindbladParams{ModelParams(1.0, 0.0, 2.0)},
          dynamics::LindbladParams{ModelParams(1.0, 3.0, 0.5), 0.2},
          dynamics::LindbladParams{ModelParams(1.0, 3.0, 0.5), 0.2,
                                   dynamics::T1Direction::toward_state_1}}) {
      const dynamics::DensitySeries s = dynamics::integrate_master_equation(
          p, QubitState::excited().density(), 30.0, 0.005);
      for (const Operator& rho : s.states) {
        trace_err = std::max(trace_err, std::abs(rho.trace() - Complex(1.0)));
        herm_err = std::max(herm_err, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, min_eigenvalue(rho));
      }
    }
    ok &= trace_err <= 1e-9 && herm_err <= 1e-9 && min_eig >= -1e-8;
    d << "lindblad trace " << num(trace_err, 2) << " hermiticity " << num(herm_err, 2)
      << " min eig " << num(min_eig, 3) << "; ";
  }
  {  // memory kernel against RK4
    const ModelParams m(1.0, 3.0, std::sqrt(10.0) / 2.0);
    const double dt = 0.01 / std::max(m.omega(), 2.0 * m.gamma());
    const dynamics::ScalarSeries k = dynamics::memory_kernel_z(m, 20.0, dt);
    const dynamics::DensitySeries s =
        dynamics::integrate_master_equation({m}, QubitState::excited().density(), 20.0, dt);
    double sup = 0.0;
    for (std::size_t i = 0; i < k.values.size() && i < s.states.size(); ++i) {
      sup = std::max(sup, std::abs(k.values[i] - bloch_of(s.states[i]).z));
    }
    ok &= sup < 1e-3 && k.values.size() == s.states.size();
    d << "memory kernel vs RK4 " << num(sup, 3) << "; ";
  }
  {  // POVM completeness by adaptive Gauss-Kronrod over the real line
    double worst = 0.0;
    for (double s : {0.01, 0.1, 1.0}) {
      const double gamma = 1.0;
      const double dt = s / (2.0 * gamma);
      for (int lambda : {0, 1}) {
        auto f = [&](double x) {
          const double m = continuous::gaussian_kraus(x, gamma, dt)(lambda == 1 ? 0 : 1,
                                                                     lambda == 1 ? 0 : 1);
          return m * m;
        };
        const double inf = std::numeric_limits<double>::infinity();
        const double integral =
            boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -inf, inf, 15, 1e-14);
        worst = std::max(worst, std::abs(integral - 1.0));
      }
    }
    ok &= worst < 1e-8;
    d << "POVM completeness " << num(worst, 2);
  }
  r.passed = ok;
  r.detail = d.str();
  return r;
}

using CheckFn = CheckResult (*)(const Options&);
constexpr CheckFn kChecks[] = {
    pulsed_survival,        continuous_mixing,   critical_rate_location, stabilized_rate_law,
    sech_symmetry,          asymptotic_universality, poisson_equivalence, readout_statistics,
    jump_rate_check,        null_response,       invariant_suite,
};

}  // namespace

int check_count() { return static_cast<int>(std::size(kChecks)); }

CheckResult run_check(int id, const Options& opts) {
  if (id < 1 || id > check_count()) fail(ErrorKind::invalid_argument, "unknown check id");
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = kChecks[id - 1](opts);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_all(const Options& opts,
                                 const std::function<void(const CheckResult&)>& report) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= check_count(); ++id) {
    out.push_back(run_check(id, opts));
    if (report) report(out.back());
  }
  return out;
}

std::string format(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name +
         ": " + r.detail + " (" + secs + " s)";
}

}  // namespace zeno::validation
