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

#include <optional>
#include <string>
#include <vector>

#include "ladderqed/analysis.hpp"
#include "ladderqed/calibration.hpp"
#include "ladderqed/config.hpp"

namespace ladderqed {

struct LabeledTrace {
  std::string label;
  double omega_c_mhz = 0;
  SpectrumTrace trace;
};

struct LabeledSignal {
  std::string label;
  SpectrumField field = SpectrumField::kTransmission;
  TimeSignal signal;
};

struct LabeledFit {
  std::string label;
  SpectrumField field = SpectrumField::kTransmission;
  FitOutcome fit;
};

struct LabeledDoublet {
  std::string label;
  DoubletReport report;
};

struct LabeledRegime {
  std::string label;
  SystemParams<> params;
  RegimeReport report;
};

struct CalibrationReport {
  CalibrationParams params;
  std::vector<StarkPoint> stark_points;  // from the configured delta_ac list
  StarkLineFit stark_fit;
  std::vector<double> poisson;           // pmf(nbar, n), n = 0..n_max
  Eigen::VectorXd omega;                 // number-splitting grid, rad/us
  Eigen::VectorXd spectrum;
};

struct ScenarioBundle {
  std::vector<LabeledTrace> traces;
  std::vector<LabeledSignal> signals;
  std::vector<LabeledFit> fits;
  std::vector<LabeledDoublet> doublets;
  std::vector<LabeledRegime> regimes;
  std::optional<CalibrationReport> calibration;
};

/// "omega_c_7.3MHz" for 7.3 MHz.
std::string coupler_label(double omega_c_mhz);

/// One sub-run per coupler strength in config.coupler_list, producing the
/// configured products. Spectra are normalized against an undriven sweep on
/// the same grid; noise (if configured) uses seed + index for sub-run index.
ScenarioBundle run_scenario(const ScenarioConfig& config);

CalibrationReport run_calibration(const ScenarioConfig& config);

}  // namespace ladderqed
