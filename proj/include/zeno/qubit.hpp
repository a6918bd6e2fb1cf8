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

#include <Eigen/Dense>

#include <complex>

namespace zeno {

using Complex = std::complex<double>;

/// Pure-state amplitudes. Index 0 is |1> (sigma_z = +1), index 1 is |0>.
using Amplitudes = Eigen::Vector2cd;
/// 2x2 operator or density matrix in the same (|1>, |0>) basis.
using Operator = Eigen::Matrix2cd;

struct Bloch {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const noexcept;
};

/// Drive and measurement parameters of the qubit model. Rates are angular
/// frequencies (rad/time) for the Hamiltonian and 1/time for measurement.
class ModelParams {
 public:
  /// Throws invalid_argument for non-finite values, omega_r < 0 or gamma < 0.
  ModelParams(double omega_r, double delta, double gamma);

  double omega_r() const noexcept { return omega_r_; }
  double delta() const noexcept { return delta_; }
  double gamma() const noexcept { return gamma_; }

  /// Dressed orbit frequency sqrt(omega_r^2 + delta^2).
  double omega() const noexcept { return omega_; }
  /// Tilt of the oscillation axis from z, in [0, pi].
  double theta() const noexcept { return theta_; }
  double sin_theta() const noexcept;
  double cos_theta() const noexcept;

  ModelParams with_gamma(double gamma) const { return {omega_r_, delta_, gamma}; }

 private:
  double omega_r_;
  double delta_;
  double gamma_;
  double omega_;
  double theta_;
};

namespace pauli {
Operator identity();
Operator x();
Operator y();
Operator z();
}  // namespace pauli

/// Either a normalised pure state or a density matrix.
class QubitState {
 public:
  /// Validates |a|^2 = 1 within 1e-10.
  static QubitState pure(const Amplitudes& amplitudes);
  /// Validates trace, Hermiticity and positivity.
  static QubitState mixed(const Operator& rho);
  static QubitState from_bloch(const Bloch& b);

  /// |1>, the initial state used throughout.
  static QubitState excited();
  /// |0>
  static QubitState ground();

  bool is_pure() const noexcept { return pure_; }

  /// Contract violation when called on a mixed state.
  const Amplitudes& amplitudes() const;
  Operator density() const;
  Bloch bloch() const;

  /// Population of |1>.
  double p1() const;
  double z() const { return 2.0 * p1() - 1.0; }

 private:
  QubitState(bool pure, const Amplitudes& a, const Operator& rho)
      : pure_(pure), amplitudes_(a), rho_(rho) {}

  bool pure_;
  Amplitudes amplitudes_;
  Operator rho_;
};

/// exp(-i omega t sigma_theta / 2).
Operator unitary_propagator(const ModelParams& params, double t);

/// u |psi> or u rho u^dagger. Contract violation if u is not unitary within 1e-10.
QubitState apply_unitary(const QubitState& state, const Operator& u);

/// Bloch vector expressed in the frame whose z' axis is the tilted
/// oscillation axis. y is untouched.
Bloch rotate_frame(const Bloch& b, double theta) noexcept;
Bloch unrotate_frame(const Bloch& b, double theta) noexcept;

Bloch bloch_of(const Amplitudes& a) noexcept;
Bloch bloch_of(const Operator& rho) noexcept;

/// Smallest eigenvalue of a Hermitian 2x2 matrix.
double min_eigenvalue(const Operator& rho) noexcept;

}  // namespace zeno
