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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "ladderqed/lindblad.hpp"

namespace ladderqed {

/// Uniform probe-detuning grid plus the model it is evaluated on. The delta
/// field of `base_params` is overwritten at each grid point.
struct SweepSpec {
  double delta_min = 0;
  double delta_max = 0;
  int n_points = 0;
  SystemParams<> base_params;

  static constexpr int kMinPoints = 16;
  static constexpr int kDefaultPoints = 801;

  /// Span +-max(15 * 2pi rad/us, 2 omega_c + 8 kappa).
  static SweepSpec default_for(const SystemParams<>& params, int n_points = kDefaultPoints);

  void validate() const;
  Eigen::VectorXd grid() const;
};

/// Column storage of a detuning sweep. `transmission_raw` is rho_g1g1;
/// `transmission` equals it until normalize_spectrum divides by a reference.
/// `chi` holds Re(rho_g1g0) for a clean sweep and T tan(phi) after noise.
struct SpectrumTrace {
  SystemParams<> params;
  Eigen::VectorXd delta;
  Eigen::VectorXd transmission_raw;
  Eigen::VectorXd transmission;
  Eigen::VectorXd phi;
  Eigen::VectorXd chi;
  Eigen::VectorXcd rho10;
  Eigen::VectorXd pop_g1;
  Eigen::VectorXd pop_f0;

  Eigen::Index size() const { return delta.size(); }
  void resize(Eigen::Index n);
};

/// Transmission phase of a coherence: tan(phi) = Re/Im, offset so that a
/// resonant undriven line (rho10 = -i|rho10|) reads zero. Principal value.
double transmission_phase(std::complex<double> rho10);

/// T tan(phi) with |cos(phi)| floored at 1e-12 to keep the zero crossings finite.
double dispersion_from_phase(double transmission, double phi);

SpectrumTrace sweep_spectrum(const SweepSpec& spec);

/// T = T_raw / max(reference.T_raw). Reference must be an undriven sweep on
/// the same grid.
SpectrumTrace normalize_spectrum(const SpectrumTrace& trace, const SpectrumTrace& reference);

/// Linear-response rho_g1g0 for a weak probe:
///   (omega_p/2)(delta + i gamma/2) / [(delta + i kappa/2)(delta + i gamma/2) - omega_c^2/4]
std::complex<double> weak_probe_coherence(const SystemParams<>& params);

/// Uniform noise: T scaled by [1 - f, 1 + f], phi shifted by +-(f / 0.04) * 7 deg,
/// chi recomputed from the noisy pair. fraction == 0 returns the trace as is.
SpectrumTrace inject_noise(const SpectrumTrace& trace, double fraction, std::uint64_t seed);

}  // namespace ladderqed
