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

#include "ladderqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace ladderqed {

TimeSignal TimeSignal::head(double t_max) const {
  Eigen::Index n = 0;
  while (n < times.size() && times(n) <= t_max) ++n;
  return {times.head(n), values.head(n)};
}

std::string_view to_string(SpectrumField field) {
  return field == SpectrumField::kTransmission ? "T" : "chi";
}

SpectrumField spectrum_field_from_string(std::string_view name) {
  if (name == "T") return SpectrumField::kTransmission;
  if (name == "chi") return SpectrumField::kDispersion;
  throw ValidationError("unknown spectrum field '" + std::string(name) + "'", "field");
}

TimeSignal inverse_fourier(const Eigen::VectorXd& delta, const Eigen::VectorXd& y, SpectrumField field,
                           Window window) {
  constexpr Eigen::Index kMinPoints = 64;
  const Eigen::Index n = delta.size();
  if (n < kMinPoints) {
    std::ostringstream os;
    os << "inverse transform needs at least " << kMinPoints << " grid points, got " << n;
    throw ValidationError(os.str(), "delta");
  }
  if (y.size() != n) throw ValidationError("field length differs from grid length", "y");
  const double step = (delta(n - 1) - delta(0)) / static_cast<double>(n - 1);
  if (!(step > 0)) throw ValidationError("detuning grid must be increasing", "delta");
  for (Eigen::Index k = 1; k < n; ++k)
    if (std::abs((delta(k) - delta(k - 1)) - step) > 1e-9 * step)
      throw ValidationError("inverse transform requires a uniform detuning grid", "delta");

  Eigen::VectorXd weighted = y;
  if (window == Window::kHann) {
    for (Eigen::Index k = 0; k < n; ++k)
      weighted(k) *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / static_cast<double>(n - 1)));
  }

  const double dt = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  const Eigen::Index m_count = n / 2 + 1;
  TimeSignal out;
  out.times = Eigen::VectorXd::LinSpaced(m_count, 0.0, dt * static_cast<double>(m_count - 1));
  out.values.resize(m_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const double t = out.times(m);
    double acc = 0;
    if (field == SpectrumField::kTransmission) {
      for (Eigen::Index k = 0; k < n; ++k) acc += weighted(k) * std::cos(delta(k) * t);
    } else {
      for (Eigen::Index k = 0; k < n; ++k) acc += weighted(k) * std::sin(delta(k) * t);
    }
    out.values(m) = acc;
  }

  const double norm =
      field == SpectrumField::kTransmission ? out.values(0) : out.values.cwiseAbs().maxCoeff();
  if (!(std::abs(norm) > 0) || !std::isfinite(norm))
    throw NumericalError("inverse transform has no weight to normalize by");
  out.values /= norm;
  return out;
}

TimeSignal inverse_fourier(const SpectrumTrace& trace, SpectrumField field, Window window) {
  return inverse_fourier(trace.delta, field == SpectrumField::kTransmission ? trace.transmission : trace.chi,
                         field, window);
}

int count_sign_changes(const TimeSignal& signal, double t_max) {
  int changes = 0;
  int previous = 0;
  for (Eigen::Index i = 0; i < signal.size() && signal.times(i) <= t_max; ++i) {
    const double v = signal.values(i);
    const int sign = (v > 0) - (v < 0);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

DoubletReport find_peaks(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const PeakOptions& options) {
  const Eigen::Index n = y.size();
  if (x.size() != n) throw ValidationError("x and y differ in length", "y");
  DoubletReport report;
  if (n < 3) return report;

  Eigen::VectorXd s = y;
  if (options.smooth) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index lo = std::max<Eigen::Index>(0, i - 2);
      const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + 2);
      s(i) = y.segment(lo, hi - lo + 1).mean();
    }
  }
  const double global = s.maxCoeff();
  if (!(global > 0)) return report;

  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (!(s(i) > s(i - 1) && s(i) >= s(i + 1))) continue;

    // Topographic prominence: height above the higher of the two saddles
    // separating this peak from taller terrain (or the grid edge).
    double left_min = s(i);
    for (Eigen::Index j = i - 1; j >= 0 && s(j) <= s(i); --j) left_min = std::min(left_min, s(j));
    double right_min = s(i);
    for (Eigen::Index j = i + 1; j < n && s(j) <= s(i); ++j) right_min = std::min(right_min, s(j));
    if (s(i) - std::max(left_min, right_min) < options.min_prominence * global) continue;

    const double y0 = s(i - 1), y1 = s(i), y2 = s(i + 1);
    const double curvature = y0 - 2.0 * y1 + y2;
    const double offset = curvature != 0 ? 0.5 * (y0 - y2) / curvature : 0.0;
    report.centers.push_back(x(i) + offset * 0.5 * (x(i + 1) - x(i - 1)));
  }
  report.n_peaks = static_cast<int>(report.centers.size());
  if (report.n_peaks == 2) report.separation = std::abs(report.centers[1] - report.centers[0]);
  return report;
}

DoubletReport find_doublet(const SpectrumTrace& trace, const PeakOptions& options) {
  return find_peaks(trace.delta, trace.transmission, options);
}

std::string_view to_string(Regime regime) { return regime == Regime::kEIT ? "EIT" : "ATS"; }

RegimeReport classify_regime(const SystemParams<>& params) {
  validate(params);
  const double k = params.kappa, g = params.gamma, wc = params.omega_c;
  const double centre = -(k + g) / 4.0;
  const std::complex<double> root = std::sqrt(std::complex<double>((k - g) * (k - g) / 16.0 - wc * wc / 4.0));
  RegimeReport report;
  report.poles = {centre + root, centre - root};
  report.threshold = std::abs(k - g) / 2.0;
  report.regime = wc > report.threshold ? Regime::kATS : Regime::kEIT;
  report.resolvable = std::abs(report.poles[0].imag() - report.poles[1].imag()) > (k + g) / 4.0;
  return report;
}

double dressed_gap(const SystemParams<>& params) {
  const double asym = 0.5 * (params.kappa - params.gamma);
  return std::sqrt(std::max(0.0, params.omega_c * params.omega_c - asym * asym));
}

}  // namespace ladderqed
