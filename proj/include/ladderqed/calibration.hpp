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

#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "ladderqed/fitting.hpp"

namespace ladderqed {

/// Dispersive-readout calibration quantities. Angular rates in rad/us.
struct CalibrationParams {
  double chi_shift = 0;  // dispersive shift, negative for this device
  double nbar = 0;       // mean probe photon number
  double nbar_c = 0;     // mean coupler photon number
  double delta_ac = 0;   // ac-Stark shift of |f0>
  double gamma_q = 0;    // qubit spectroscopic linewidth (FWHM)
};

/// Reported device constants. Informational only.
struct DeviceMetadata {
  double e_j_over_h_ghz = 42.418;
  double e_c_over_h_ghz = 0.259;
  double omega_cav = 2 * std::numbers::pi * 8.121;        // rad/ns
  double omega_g1g0 = 2 * std::numbers::pi * 8.0870;      // rad/ns
  double omega_e0g0 = 2 * std::numbers::pi * 9.1160;      // rad/ns
  double omega_f0g0_half = 2 * std::numbers::pi * 8.9865; // rad/ns
  double g_coupling = 2 * std::numbers::pi * 182.0;       // rad/us
};

/// e^{-nbar} nbar^n / n!, in log space above n = 20.
double poisson_pmf(double nbar, int n);

/// Smallest n with sum_{k <= n} pmf(nbar, k) >= mass.
int poisson_truncation(double nbar, double mass = 1.0 - 1e-6);

/// nbar_c = delta_ac / (2 chi_shift).
double stark_to_photons(double delta_ac, double chi_shift);
/// delta_ac = 2 chi_shift nbar_c.
double photons_to_stark(double nbar_c, double chi_shift);

struct StarkPoint {
  double nbar_c;
  double delta_ac;
};

struct StarkLineFit {
  double slope = 0;      // d delta_ac / d nbar_c
  double chi_shift = 0;  // slope / 2
  double residual_rms = 0;
};

/// Least-squares line through the origin.
StarkLineFit fit_stark_line(std::span<const StarkPoint> points);

/// Poisson-weighted comb of unit-height Lorentzians (FWHM gamma_q) centred at
/// 2 chi_shift n, truncated at poisson_truncation(nbar). omega is measured
/// from the n = 0 line.
Eigen::VectorXd number_splitting_spectrum(const CalibrationParams& cal, const Eigen::VectorXd& omega);

struct NumberSplittingFit {
  double nbar = 0;
  double chi_shift = 0;
  double gamma_q = 0;
  LeastSquaresResult result;
};

/// Fits (nbar, chi_shift, gamma_q) to a measured comb, starting from `initial`.
NumberSplittingFit fit_number_splitting(const Eigen::VectorXd& omega, const Eigen::VectorXd& spectrum,
                                        const CalibrationParams& initial);

}  // namespace ladderqed
