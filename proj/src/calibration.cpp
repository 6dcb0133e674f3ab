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

#include "ladderqed/calibration.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ladderqed/errors.hpp"

namespace ladderqed {

double poisson_pmf(double nbar, int n) {
  if (!(nbar >= 0)) throw ValidationError("mean photon number must be non-negative", "nbar");
  if (n < 0) throw ValidationError("photon number must be non-negative", "n");
  if (n > 20) {
    if (nbar == 0) return 0;
    return std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0));
  }
  double term = std::exp(-nbar);
  for (int k = 1; k <= n; ++k) term *= nbar / k;
  return term;
}

int poisson_truncation(double nbar, double mass) {
  double cumulative = 0;
  for (int n = 0;; ++n) {
    cumulative += poisson_pmf(nbar, n);
    if (cumulative >= mass) return n;
    if (n > 100000) throw NumericalError("Poisson truncation did not reach the requested mass");
  }
}

double stark_to_photons(double delta_ac, double chi_shift) {
  if (chi_shift == 0) throw ValidationError("dispersive shift must be non-zero", "chi_shift");
  return delta_ac / (2.0 * chi_shift);
}

double photons_to_stark(double nbar_c, double chi_shift) { return 2.0 * chi_shift * nbar_c; }

StarkLineFit fit_stark_line(std::span<const StarkPoint> points) {
  if (points.size() < 2) throw ValidationError("Stark line fit needs at least two points", "points");
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    sxx += p.nbar_c * p.nbar_c;
    sxy += p.nbar_c * p.delta_ac;
  }
  if (sxx == 0) throw ValidationError("Stark line fit needs a non-zero photon number", "nbar_c");
  StarkLineFit fit;
  fit.slope = sxy / sxx;
  fit.chi_shift = fit.slope / 2.0;
  double ss = 0;
  for (const auto& p : points) {
    const double r = p.delta_ac - fit.slope * p.nbar_c;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(points.size()));
  return fit;
}

namespace {

double comb_at(double omega, double nbar, double chi_shift, double gamma_q, int n_max) {
  const double hw2 = 0.25 * gamma_q * gamma_q;
  double s = 0;
  for (int n = 0; n <= n_max; ++n) {
    const double d = omega - 2.0 * chi_shift * n;
    s += poisson_pmf(nbar, n) * hw2 / (d * d + hw2);
  }
  return s;
}

}  // namespace

Eigen::VectorXd number_splitting_spectrum(const CalibrationParams& cal, const Eigen::VectorXd& omega) {
  if (!(cal.gamma_q > 0)) throw ValidationError("qubit linewidth must be positive", "gamma_q");
  const int n_max = poisson_truncation(cal.nbar);
  Eigen::VectorXd out(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    out(i) = comb_at(omega(i), cal.nbar, cal.chi_shift, cal.gamma_q, n_max);
  return out;
}

NumberSplittingFit fit_number_splitting(const Eigen::VectorXd& omega, const Eigen::VectorXd& spectrum,
                                        const CalibrationParams& initial) {
  // p = (nbar, chi_shift, gamma_q); unphysical trials evaluate to NaN and are rejected.
  const ModelFunction model = [](double w, const Eigen::VectorXd& p) {
    if (!(p(0) >= 0) || !(p(2) > 0)) return std::numeric_limits<double>::quiet_NaN();
    return comb_at(w, p(0), p(1), p(2), poisson_truncation(p(0)));
  };
  Eigen::VectorXd start(3);
  start << initial.nbar, initial.chi_shift, initial.gamma_q;
  NumberSplittingFit fit;
  fit.result = levenberg_marquardt(omega, spectrum, model, start);
  fit.nbar = fit.result.params(0);
  fit.chi_shift = fit.result.params(1);
  fit.gamma_q = fit.result.params(2);
  return fit;
}

}  // namespace ladderqed
