// Copyright 2026 The ladderqed Authors
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

// Driven three-level ladder |g0> <-> |g1> <-> |f0> under a Lindblad master
// equation. Everything here is templated on the real scalar type; the rest of
// the library instantiates it with double.
//
// Units: angular rates in rad/us, times in us. Vectorization is column-major,
// vec(rho)[i + 3 j] = rho(i, j), which is Eigen's native storage order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ladderqed/errors.hpp"

namespace ladderqed {

template <typename Real>
constexpr Real mhz_to_angular(Real mhz) {
  return Real(2) * std::numbers::pi_v<Real> * mhz;
}

template <typename Real>
constexpr Real angular_to_mhz(Real omega) {
  return omega / (Real(2) * std::numbers::pi_v<Real>);
}

/// Basis ordering of the ladder.
enum Level : Eigen::Index { kG0 = 0, kG1 = 1, kF0 = 2 };

/// Where the |f0> damping channel deposits population.
enum class DecayTarget { kG0, kG1 };

template <typename Real = double>
struct SystemParams {
  Real kappa = 0;    // |g1> decay
  Real gamma = 0;    // |f0> damping
  Real omega_p = 0;  // probe Rabi strength on g0 <-> g1
  Real omega_c = 0;  // coupler Rabi strength on g1 <-> f0
  Real delta = 0;    // probe detuning
  DecayTarget f_decay_target = DecayTarget::kG0;

  bool operator==(const SystemParams&) const = default;
};

template <typename Real>
void validate(const SystemParams<Real>& p) {
  const auto require_rate = [](Real value, const char* name) {
    if (!std::isfinite(value) || value < Real(0)) {
      std::ostringstream os;
      os << name << " must be finite and non-negative, got " << value;
      throw ValidationError(os.str(), name);
    }
  };
  require_rate(p.kappa, "kappa");
  require_rate(p.gamma, "gamma");
  require_rate(p.omega_p, "omega_p");
  require_rate(p.omega_c, "omega_c");
  if (!std::isfinite(p.delta)) throw ValidationError("delta must be finite", "delta");
}

template <typename Real>
using Matrix3c = Eigen::Matrix<std::complex<Real>, 3, 3>;
template <typename Real>
using Vector9c = Eigen::Matrix<std::complex<Real>, 9, 1>;
template <typename Real>
using Matrix9c = Eigen::Matrix<std::complex<Real>, 9, 9>;

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
Matrix3c<Real> hermitize(const Matrix3c<Real>& m) {
  return (m + m.adjoint()) / Real(2);
}

template <typename Real>
Vector9c<Real> vectorize(const Matrix3c<Real>& rho) {
  return Eigen::Map<const Vector9c<Real>>(rho.data());
}

template <typename Real>
Matrix3c<Real> unvectorize(const Vector9c<Real>& v) {
  return Eigen::Map<const Matrix3c<Real>>(v.data());
}

/// Kronecker product of two 3x3 matrices.
template <typename Real>
Matrix9c<Real> kron(const Matrix3c<Real>& a, const Matrix3c<Real>& b) {
  Matrix9c<Real> out;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) out.template block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

/// Hermitian, unit-trace, positive semidefinite 3x3 state. Construction
/// checks all three properties and throws NumericalError on violation.
template <typename Real = double>
class DensityMatrix {
 public:
  using Matrix = Matrix3c<Real>;

  static constexpr Real kHermiticityTolerance = Real(1e-12);
  static constexpr Real kTraceTolerance = Real(1e-10);
  static constexpr Real kPositivityTolerance = Real(1e-10);

  explicit DensityMatrix(const Matrix& entries) : entries_(entries) { check(); }

  static DensityMatrix projector(Level level) {
    Matrix m = Matrix::Zero();
    m(level, level) = Real(1);
    return DensityMatrix(m);
  }
  static DensityMatrix ground() { return projector(kG0); }

  const Matrix& entries() const noexcept { return entries_; }
  std::complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  Real population(Level level) const { return entries_(level, level).real(); }

  Real min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  void check() const {
    const Real herm = hermiticity_defect(entries_);
    if (!(herm <= kHermiticityTolerance)) {
      std::ostringstream os;
      os << "density matrix not Hermitian: defect " << herm;
      throw NumericalError(os.str());
    }
    const Real trace_error = std::abs(entries_.trace() - std::complex<Real>(1));
    if (!(trace_error <= kTraceTolerance)) {
      std::ostringstream os;
      os << "density matrix trace off by " << trace_error;
      throw NumericalError(os.str());
    }
    const Real lowest = min_eigenvalue();
    if (!(lowest >= -kPositivityTolerance)) {
      std::ostringstream os;
      os << "density matrix not positive semidefinite: eigenvalue " << lowest;
      throw NumericalError(os.str());
    }
  }

  Matrix entries_;
};

template <typename Real = double>
struct JumpOperatorSet {
  std::vector<Matrix3c<Real>> ops;
};

/// 9x9 generator acting on vec(rho).
template <typename Real = double>
class Superoperator {
 public:
  using Matrix = Matrix9c<Real>;

  Superoperator() : matrix_(Matrix::Zero()) {}
  explicit Superoperator(const Matrix& matrix) : matrix_(matrix) {}

  const Matrix& matrix() const noexcept { return matrix_; }

  Matrix3c<Real> apply(const Matrix3c<Real>& rho) const {
    return unvectorize<Real>(matrix_ * vectorize(rho));
  }

 private:
  Matrix matrix_;
};

/// Row functional v -> tr(unvectorize(v)).
template <typename Real>
Eigen::Matrix<std::complex<Real>, 1, 9> trace_functional() {
  Eigen::Matrix<std::complex<Real>, 1, 9> row = Eigen::Matrix<std::complex<Real>, 1, 9>::Zero();
  row(0) = row(4) = row(8) = Real(1);
  return row;
}

/// max |tr(L(x))| over basis inputs x; zero for a trace-preserving generator.
template <typename Real>
Real trace_preservation_defect(const Superoperator<Real>& L) {
  return (trace_functional<Real>() * L.matrix()).cwiseAbs().maxCoeff();
}

template <typename Real>
Eigen::Matrix<std::complex<Real>, 9, 1> liouvillian_eigenvalues(const Superoperator<Real>& L) {
  Eigen::ComplexEigenSolver<Matrix9c<Real>> solver(L.matrix(), false);
  return solver.eigenvalues();
}

/// Smallest |lambda| over the spectrum; the steady state sits at zero.
template <typename Real>
Real zero_mode_magnitude(const Superoperator<Real>& L) {
  return liouvillian_eigenvalues(L).cwiseAbs().minCoeff();
}

template <typename Real>
Real spectral_radius(const Superoperator<Real>& L) {
  return liouvillian_eigenvalues(L).cwiseAbs().maxCoeff();
}

/// H / hbar in rad/us over (|g0>, |g1>, |f0>):
///   -delta (|g1><g1| + |f0><f0|) + omega_p/2 (|g1><g0| + h.c.) + omega_c/2 (|f0><g1| + h.c.)
template <typename Real>
Matrix3c<Real> build_hamiltonian(const SystemParams<Real>& p) {
  validate(p);
  Matrix3c<Real> h = Matrix3c<Real>::Zero();
  h(kG1, kG1) = h(kF0, kF0) = -p.delta;
  h(kG1, kG0) = h(kG0, kG1) = p.omega_p / Real(2);
  h(kF0, kG1) = h(kG1, kF0) = p.omega_c / Real(2);
  return h;
}

/// {sqrt(kappa) |g0><g1|, sqrt(gamma) |target><f0|}.
template <typename Real>
JumpOperatorSet<Real> build_jump_operators(const SystemParams<Real>& p) {
  validate(p);
  Matrix3c<Real> cavity = Matrix3c<Real>::Zero();
  cavity(kG0, kG1) = std::sqrt(p.kappa);
  Matrix3c<Real> qubit = Matrix3c<Real>::Zero();
  const Level target = p.f_decay_target == DecayTarget::kG0 ? kG0 : kG1;
  qubit(target, kF0) = std::sqrt(p.gamma);
  return {{cavity, qubit}};
}

/// Generator of d rho/dt = -i[H, rho] + sum_j (L_j rho L_j^dag - {rho, L_j^dag L_j}/2).
template <typename Real>
Superoperator<Real> build_liouvillian(const Matrix3c<Real>& h, const JumpOperatorSet<Real>& jumps) {
  constexpr Real kHermitianTolerance = Real(1e-12);
  if (const Real defect = hermiticity_defect(h); !(defect <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "Hamiltonian is not Hermitian (defect " << defect << ")";
    throw ValidationError(os.str(), "hamiltonian");
  }
  const Matrix3c<Real> id = Matrix3c<Real>::Identity();
  const std::complex<Real> minus_i(0, -1);
  Matrix9c<Real> m = minus_i * (kron<Real>(id, h) - kron<Real>(h.transpose(), id));
  for (const auto& op : jumps.ops) {
    const Matrix3c<Real> number = op.adjoint() * op;
    m += kron<Real>(op.conjugate(), op);
    m -= Real(0.5) * (kron<Real>(id, number) + kron<Real>(number.transpose(), id));
  }
  return Superoperator<Real>(m);
}

template <typename Real>
Superoperator<Real> build_liouvillian(const SystemParams<Real>& p) {
  return build_liouvillian(build_hamiltonian(p), build_jump_operators(p));
}

template <typename Real = double>
struct SteadyStateSolution {
  DensityMatrix<Real> rho;
  Real residual;          // ||L vec(rho)||_inf
  Real condition_number;  // of the trace-augmented system
  bool used_svd_fallback;
};

template <typename Real = double>
struct SteadyStateOptions {
  Real null_tolerance = Real(1e-10);  // relative to max(1, largest singular value)
  Real condition_limit = Real(1e12);
  Real residual_tolerance = Real(1e-10);
};

/// Solves L vec(rho) = 0 with tr(rho) = 1 by replacing the d(rho_00)/dt row
/// with the trace functional. Falls back to the smallest right singular
/// vector of L when the augmented system's condition number exceeds the limit.
/// For a trace-preserving L with a one-dimensional null space the augmented
/// system is only that badly conditioned when a second singular value is
/// already below the null tolerance, so the degeneracy check usually fires first.
template <typename Real>
SteadyStateSolution<Real> solve_steady_state(const Superoperator<Real>& L,
                                             const SteadyStateOptions<Real>& options = {}) {
  using Matrix = Matrix9c<Real>;
  using Vector = Vector9c<Real>;

  const Eigen::JacobiSVD<Matrix> svd(L.matrix(), Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Real scale = std::max(Real(1), sigma(0));
  const int null_dim = static_cast<int>((sigma.array() <= options.null_tolerance * scale).count());
  if (null_dim > 1) {
    std::ostringstream os;
    os << "steady state is degenerate: Liouvillian null space has dimension " << null_dim;
    throw DegenerateSteadyStateError(os.str(), null_dim);
  }

  Matrix augmented = L.matrix();
  augmented.row(0) = trace_functional<Real>();
  Vector rhs = Vector::Zero();
  rhs(0) = Real(1);

  const Eigen::JacobiSVD<Matrix> aug_svd(augmented);
  const auto& aug_sigma = aug_svd.singularValues();
  const Real condition = aug_sigma(8) > Real(0) ? aug_sigma(0) / aug_sigma(8)
                                                : std::numeric_limits<Real>::infinity();
  Vector v;
  bool fallback = false;
  if (condition <= options.condition_limit) {
    v = augmented.fullPivLu().solve(rhs);
  } else {
    fallback = true;
    v = svd.matrixV().col(8);
  }

  Matrix3c<Real> rho = unvectorize<Real>(v);
  const std::complex<Real> trace = rho.trace();
  if (std::abs(trace) == Real(0)) throw NumericalError("steady-state candidate has zero trace");
  rho = hermitize<Real>(rho / trace);

  const Real residual = (L.matrix() * vectorize(rho)).cwiseAbs().maxCoeff();
  if (!(residual <= options.residual_tolerance)) {
    std::ostringstream os;
    os << "steady-state solve failed: residual " << residual << " (condition " << condition << ")";
    throw NumericalError(os.str());
  }
  return {DensityMatrix<Real>(rho), residual, condition, fallback};
}

template <typename Real>
DensityMatrix<Real> steady_state(const Superoperator<Real>& L) {
  return solve_steady_state(L).rho;
}

template <typename Real = double>
struct TimeTrajectory {
  std::vector<Real> times;
  std::vector<DensityMatrix<Real>> states;
};

/// Fixed-step classic RK4 for d vec(rho)/dt = L vec(rho), starting at t = 0.
/// Each emitted state is Hermitized and trace-renormalized; the drift removed
/// by that correction must stay below 1e-8 per step. The step must satisfy
/// dt <= 0.01 / spectral_radius(L).
template <typename Real>
TimeTrajectory<Real> evolve(const DensityMatrix<Real>& rho0, const Superoperator<Real>& L, Real t_end,
                            Real dt) {
  constexpr Real kStabilityMargin = Real(0.01);
  constexpr Real kDriftTolerance = Real(1e-8);

  if (!(dt > Real(0))) throw ValidationError("time step must be positive", "dt");
  if (!(t_end >= dt)) throw ValidationError("t_end must be at least one time step", "t_end");
  const Real radius = spectral_radius(L);
  if (radius > Real(0) && dt > kStabilityMargin / radius) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds stability bound " << kStabilityMargin / radius;
    throw ValidationError(os.str(), "dt");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - Real(1e-9)));
  const auto& m = L.matrix();

  TimeTrajectory<Real> out;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  out.times.push_back(Real(0));
  out.states.push_back(rho0);

  Vector9c<Real> v = vectorize(rho0.entries());
  for (std::size_t step = 1; step <= steps; ++step) {
    const Vector9c<Real> k1 = m * v;
    const Vector9c<Real> k2 = m * (v + (dt / 2) * k1);
    const Vector9c<Real> k3 = m * (v + (dt / 2) * k2);
    const Vector9c<Real> k4 = m * (v + dt * k3);
    v += (dt / 6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);

    const Matrix3c<Real> raw = unvectorize<Real>(v);
    const std::complex<Real> trace = raw.trace();
    const Real drift = std::max(std::abs(trace - std::complex<Real>(1)), hermiticity_defect(raw));
    if (!(drift <= kDriftTolerance)) {
      std::ostringstream os;
      os << "integration drift " << drift << " at step " << step << " exceeds tolerance";
      throw NumericalError(os.str());
    }
    const Matrix3c<Real> corrected = hermitize<Real>(raw / trace);
    v = vectorize(corrected);
    out.times.push_back(static_cast<Real>(step) * dt);
    out.states.emplace_back(corrected);
  }
  return out;
}

}  // namespace ladderqed
