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

// File layout under the output directory:
//   spectrum_<label>.{csv,json}    delta_mhz, T, phi_deg, chi, re_rho10, im_rho10, pop_g1, pop_f0
//   pf_<T|chi>_<label>.{csv,json}  t_us, pf
//   doublets, fits, regimes        one summary table each, always written
//   calibration, poisson, number_splitting, stark_fit   when the bundle carries a calibration
// JSON files mirror the CSV column names. Values carry 12 significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "ladderqed/config.hpp"
#include "ladderqed/scenario.hpp"

namespace ladderqed {

/// 12 significant digits, "%.12g".
std::string format_value(double value);

/// Writes every artifact of `bundle` below config.output.path in
/// config.output.format. Returns the paths written, in write order.
std::vector<std::filesystem::path> write_output(const ScenarioBundle& bundle, const ScenarioConfig& config);

/// Readers for the JSON spectrum and time-signal files. Spectra come back in
/// rad/us with transmission_raw equal to the stored T.
SpectrumTrace read_spectrum_json(const std::filesystem::path& path);
TimeSignal read_signal_json(const std::filesystem::path& path);

}  // namespace ladderqed
