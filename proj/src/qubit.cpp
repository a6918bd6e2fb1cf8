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

#include "zeno/qubit.hpp"

#include "zeno/error.hpp"

#include <cmath>
#include <string>

namespace zeno {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPositivityTolerance = 1e-10;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double Bloch::length() const noexcept { return std::sqrt(x * x + y * y + z * z); }

ModelParams::ModelParams(double omega_r, double delta, double gamma)
    : omega_r_(omega_r), delta_(delta), gamma_(gamma) {
  if (!finite(omega_r) || !finite(delta) || !finite(gamma)) {
    fail(ErrorKind::invalid_argument, "model parameters must be finite");
  }
  if (omega_r < 0.0) fail(ErrorKind::invalid_argument, "omega_r must be >= 0");
  if (gamma < 0.0) fail(ErrorKind::invalid_argument, "gamma must be >= 0");
  omega_ = std::hypot(omega_r, delta);
  theta_ = std::atan2(omega_r, delta);
}

double ModelParams::sin_theta() const noexcept {
  return omega_ > 0.0 ? omega_r_ / omega_ : 0.0;
}

double ModelParams::cos_theta() const noexcept {
  return omega_ > 0.0 ? delta_ / omega_ : 1.0;
}

namespace pauli {
Operator identity() { return Operator::Identity(); }
Operator x() {
  Operator m;
  m << 0, 1, 1, 0;
  return m;
}
Operator y() {
  // sigma_y = -i|1><0| + i|0><1| in the (|1>, |0>) ordering.
  Operator m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Operator z() {
  Operator m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

QubitState QubitState::pure(const Amplitudes& amplitudes) {
  if (!amplitudes.allFinite()) fail(ErrorKind::invalid_argument, "non-finite amplitudes");
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
    fail(ErrorKind::invalid_argument, "pure state is not normalised");
  }
  return {true, amplitudes, amplitudes * amplitudes.adjoint()};
}

QubitState QubitState::mixed(const Operator& rho) {
  if (!rho.allFinite()) fail(ErrorKind::invalid_argument, "non-finite density matrix");
  if (std::abs(rho.trace() - Complex(1.0)) > kNormTolerance) {
    fail(ErrorKind::invalid_argument, "density matrix trace differs from 1");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    fail(ErrorKind::invalid_argument, "density matrix is not Hermitian");
  }
  if (min_eigenvalue(rho) < -kPositivityTolerance) {
    fail(ErrorKind::invalid_argument, "density matrix has a negative eigenvalue");
  }
  return {false, Amplitudes::Zero(), rho};
}

QubitState QubitState::from_bloch(const Bloch& b) {
  Operator rho = 0.5 * (pauli::identity() + b.x * pauli::x() + b.y * pauli::y() +
                        b.z * pauli::z());
  return mixed(rho);
}

QubitState QubitState::excited() { return pure(Amplitudes(1.0, 0.0)); }

QubitState QubitState::ground() { return pure(Amplitudes(0.0, 1.0)); }

const Amplitudes& QubitState::amplitudes() const {
  if (!pure_) fail(ErrorKind::contract_violation, "amplitudes requested from a mixed state");
  return amplitudes_;
}

Operator QubitState::density() const { return rho_; }

Bloch QubitState::bloch() const { return pure_ ? bloch_of(amplitudes_) : bloch_of(rho_); }

double QubitState::p1() const {
  return pure_ ? std::norm(amplitudes_(0)) : rho_(0, 0).real();
}

Operator unitary_propagator(const ModelParams& params, double t) {
  if (!std::isfinite(t)) fail(ErrorKind::invalid_argument, "propagator time must be finite");
  const double half = 0.5 * params.omega() * t;
  const double c = std::cos(half);
  const double s = std::sin(half);
  const double ct = params.cos_theta();
  const double st = params.sin_theta();
  const Complex mi(0.0, -1.0);
  Operator u;
  u << Complex(c, 0.0) + mi * s * ct, mi * s * st,
       mi * s * st, Complex(c, 0.0) - mi * s * ct;
  return u;
}

QubitState apply_unitary(const QubitState& state, const Operator& u) {
  if ((u.adjoint() * u - Operator::Identity()).cwiseAbs().maxCoeff() > kNormTolerance) {
    fail(ErrorKind::contract_violation, "operator is not unitary");
  }
  if (state.is_pure()) {
    Amplitudes a = u * state.amplitudes();
    a.normalize();
    return QubitState::pure(a);
  }
  Operator rho = u * state.density() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return QubitState::mixed(rho);
}

Bloch rotate_frame(const Bloch& b, double theta) noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {b.x * c - b.z * s, b.y, b.z * c + b.x * s};
}

Bloch unrotate_frame(const Bloch& b, double theta) noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {b.x * c + b.z * s, b.y, -b.x * s + b.z * c};
}

Bloch bloch_of(const Amplitudes& a) noexcept {
  // <sigma_x> = 2 Re(a1* a0), <sigma_y> = 2 Im(a1* a0) with a1 = a(0), a0 = a(1).
  const Complex c = std::conj(a(0)) * a(1);
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a(0)) - std::norm(a(1))};
}

Bloch bloch_of(const Operator& rho) noexcept {
  // rho = (I + x sx + y sy + z sz)/2 => rho(1,0) = (x + i y)/2.
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

double min_eigenvalue(const Operator& rho) noexcept {
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(rho(0, 1)));
  return 0.5 * (a + d - disc);
}

}  // namespace zeno
