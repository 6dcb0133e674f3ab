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

#include "ladderqed/scenario.hpp"

#include <algorithm>
#include <cstdio>

namespace ladderqed {

namespace {

bool wants(const ScenarioConfig& config, Product product) {
  return std::find(config.products.begin(), config.products.end(), product) != config.products.end();
}

SweepSpec sweep_for(const ScenarioConfig& config, const SystemParams<>& params) {
  if (config.sweep.delta_min) {
    return {mhz_to_angular(*config.sweep.delta_min), mhz_to_angular(*config.sweep.delta_max), config.sweep.n_points,
            params};
  }
  return SweepSpec::default_for(params, config.sweep.n_points);
}

}  // namespace

std::string coupler_label(double omega_c_mhz) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "omega_c_%gMHz", omega_c_mhz);
  return buf;
}

ScenarioBundle run_scenario(const ScenarioConfig& config) {
  ScenarioBundle bundle;
  const bool need_spectrum = wants(config, Product::kSpectrum) || wants(config, Product::kDoublet) ||
                             wants(config, Product::kTimeDomain) || wants(config, Product::kFit);

  for (std::size_t index = 0; index < config.coupler_list.size(); ++index) {
    const double oc_mhz = config.coupler_list[index];
    const std::string label = coupler_label(oc_mhz);
    SystemParams<> params = config.system;
    params.omega_c = mhz_to_angular(oc_mhz);
    params.delta = 0;

    const RegimeReport regime = classify_regime(params);
    if (wants(config, Product::kRegime)) bundle.regimes.push_back({label, params, regime});
    if (!need_spectrum) continue;

    try {
      const SweepSpec spec = sweep_for(config, params);
      SweepSpec reference_spec = spec;
      reference_spec.base_params.omega_c = 0;
      SpectrumTrace trace = normalize_spectrum(sweep_spectrum(spec), sweep_spectrum(reference_spec));
      if (config.noise) trace = inject_noise(trace, config.noise->fraction, config.noise->seed + index);

      if (wants(config, Product::kDoublet)) bundle.doublets.push_back({label, find_doublet(trace)});

      if (wants(config, Product::kTimeDomain) || wants(config, Product::kFit)) {
        for (SpectrumField field : {SpectrumField::kTransmission, SpectrumField::kDispersion}) {
          const TimeSignal signal = inverse_fourier(trace, field, config.analysis.window);
          if (wants(config, Product::kTimeDomain)) bundle.signals.push_back({label, field, signal});
          if (wants(config, Product::kFit)) {
            // Figure-4 style runs fit the shape the regime predicts; elsewhere
            // the oscillation model is used throughout.
            const FitModel model = config.scenario == Scenario::kFig4 && regime.regime == Regime::kEIT &&
                                           field == SpectrumField::kTransmission
                                       ? FitModel::kExponential
                                       : FitModel::kDampedCosine;
            const TimeSignal window = signal.head(config.analysis.fit_horizon / params.kappa);
            bundle.fits.push_back({label, field, nlls_fit(window.times, window.values, model)});
          }
        }
      }
      if (wants(config, Product::kSpectrum)) bundle.traces.push_back({label, oc_mhz, std::move(trace)});
    } catch (const DegenerateSteadyStateError& e) {
      throw DegenerateSteadyStateError(std::string(to_string(config.scenario)) + " " + label + ": " + e.what(),
                                       e.null_dimension());
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(to_string(config.scenario)) + " " + label + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(to_string(config.scenario)) + " " + label + ": " + e.what(), e.field());
    }
  }
  return bundle;
}

CalibrationReport run_calibration(const ScenarioConfig& config) {
  const auto& c = config.calibration;
  CalibrationReport report;
  report.params.chi_shift = mhz_to_angular(c.chi_shift);
  report.params.nbar = c.nbar;
  report.params.gamma_q = mhz_to_angular(c.gamma_q);

  for (double dac_mhz : c.delta_ac) {
    const double dac = mhz_to_angular(dac_mhz);
    report.stark_points.push_back({stark_to_photons(dac, report.params.chi_shift), dac});
  }
  if (!report.stark_points.empty()) {
    report.params.delta_ac = report.stark_points.back().delta_ac;
    report.params.nbar_c = report.stark_points.back().nbar_c;
  }
  if (report.stark_points.size() >= 2) report.stark_fit = fit_stark_line(report.stark_points);

  const int n_max = poisson_truncation(c.nbar);
  for (int n = 0; n <= n_max; ++n) report.poisson.push_back(poisson_pmf(c.nbar, n));

  // The comb extends from the n = 0 line toward the sign of chi_shift.
  const double far = mhz_to_angular(c.span), near = mhz_to_angular(c.span / 4);
  report.omega = c.chi_shift < 0 ? Eigen::VectorXd::LinSpaced(c.n_points, -far, near)
                                 : Eigen::VectorXd::LinSpaced(c.n_points, -near, far);
  report.spectrum = number_splitting_spectrum(report.params, report.omega);
  return report;
}

}  // namespace ladderqed
