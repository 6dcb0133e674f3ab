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

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ladderqed/fitting.hpp"
#include "ladderqed/spectroscopy.hpp"

namespace ladderqed {

/// Real signal on t = 0, dt, 2 dt, ... (us).
struct TimeSignal {
  Eigen::VectorXd times;
  Eigen::VectorXd values;

  Eigen::Index size() const { return times.size(); }
  /// Samples with t <= t_max.
  TimeSignal head(double t_max) const;
};

enum class SpectrumField { kTransmission, kDispersion };
enum class Window { kNone, kHann };

std::string_view to_string(SpectrumField field);
SpectrumField spectrum_field_from_string(std::string_view name);

/// P_F(t) = sum_k w_k y_k exp(i delta_k t) on t_m = m dt, m = 0..n/2, with
/// dt = 2 pi / (n d_delta) so the grid is exactly one period of the discrete
/// transform. Even fields (T) keep the real part and are scaled to P_F(0) = 1.
/// The dispersion is odd in delta, so its real part vanishes identically; the
/// imaginary (sine) part is kept instead and scaled to unit peak magnitude.
TimeSignal inverse_fourier(const SpectrumTrace& trace, SpectrumField field, Window window = Window::kNone);

/// Same transform on a bare (delta, y) grid.
TimeSignal inverse_fourier(const Eigen::VectorXd& delta, const Eigen::VectorXd& y, SpectrumField field,
                           Window window = Window::kNone);

/// Sign changes among samples with t <= t_max; exact zeros are skipped.
int count_sign_changes(const TimeSignal& signal, double t_max);

struct DoubletReport {
  int n_peaks = 0;
  double separation = 0;  // |c2 - c1| when n_peaks == 2, else 0
  std::vector<double> centers;
};

struct PeakOptions {
  bool smooth = true;             // 5-point moving average before the search
  double min_prominence = 0.05;   // fraction of the global maximum
};

/// Local maxima of T, refined by three-point quadratic interpolation.
DoubletReport find_doublet(const SpectrumTrace& trace, const PeakOptions& options = {});
DoubletReport find_peaks(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const PeakOptions& options = {});

enum class Regime { kEIT, kATS };
std::string_view to_string(Regime regime);

struct RegimeReport {
  std::array<std::complex<double>, 2> poles;  // rad/us
  double threshold = 0;                       // |kappa - gamma| / 2
  Regime regime = Regime::kEIT;
  bool resolvable = false;
};

/// Roots s = -(kappa + gamma)/4 +- sqrt(((kappa - gamma)/4)^2 - (omega_c/2)^2)
/// of the weak-probe coherence denominator. ATS iff omega_c > |kappa - gamma| / 2;
/// resolvable when the imaginary splitting exceeds (kappa + gamma)/4.
RegimeReport classify_regime(const SystemParams<>& params);

/// sqrt(omega_c^2 - ((kappa - gamma)/2)^2), or 0 below the threshold.
double dressed_gap(const SystemParams<>& params);

}  // namespace ladderqed
