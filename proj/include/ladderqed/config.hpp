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

// Scenario configuration documents (JSON). All frequencies in the document
// are ordinary frequencies in MHz; they are converted to rad/us once, when the
// document is loaded.
//
//   {
//     "scenario": "fig2" | "fig3" | "fig4" | "custom",
//     "system":   {"kappa", "gamma", "omega_p", "omega_c", "delta": MHz,
//                  "f_decay_target": "g0" | "g1"},
//     "sweep":    {"delta_min", "delta_max": MHz, "n_points": int},
//     "coupler_list": [MHz, ...],
//     "noise":    {"fraction": number, "seed": int},
//     "output":   {"path": string, "format": "csv" | "json"},
//     "analysis": {"window": "none" | "hann", "fit_horizon": multiples of 1/kappa},
//     "calibration": {"chi_shift", "gamma_q": MHz, "nbar": number,
//                     "delta_ac": [MHz, ...], "span": MHz, "n_points": int},
//     "products": ["spectrum", "doublet", "timedomain", "fit", "regime"]
//   }
//
// Every key is optional. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ladderqed/analysis.hpp"
#include "ladderqed/lindblad.hpp"

namespace ladderqed {

enum class Scenario { kFig2, kFig3, kFig4, kCustom };
enum class OutputFormat { kCsv, kJson };
enum class Product { kSpectrum, kDoublet, kTimeDomain, kFit, kRegime };

std::string_view to_string(Scenario scenario);
std::string_view to_string(OutputFormat format);
std::string_view to_string(Product product);
Scenario scenario_from_string(std::string_view name);
OutputFormat output_format_from_string(std::string_view name);

/// Model parameters as written in the document (MHz).
struct SystemConfig {
  double kappa = 1.26;
  double gamma = 1.18;
  double omega_p = 0.252;
  double omega_c = 0.0;
  double delta = 0.0;
  DecayTarget f_decay_target = DecayTarget::kG0;

  SystemParams<> to_params() const;
  bool operator==(const SystemConfig&) const = default;
};

struct SweepConfig {
  std::optional<double> delta_min;  // MHz; both bounds or neither
  std::optional<double> delta_max;
  int n_points = SweepSpec::kDefaultPoints;
  bool operator==(const SweepConfig&) const = default;
};

struct NoiseConfig {
  double fraction = 0;
  std::uint64_t seed = 0;
  bool operator==(const NoiseConfig&) const = default;
};

struct OutputConfig {
  std::string path = "out";
  OutputFormat format = OutputFormat::kCsv;
  bool operator==(const OutputConfig&) const = default;
};

struct AnalysisConfig {
  Window window = Window::kNone;
  double fit_horizon = 10.0;  // fit P_F(t) on t <= fit_horizon / kappa
  bool operator==(const AnalysisConfig&) const = default;
};

struct CalibrationConfig {
  double chi_shift = -11.2;  // MHz
  double nbar = 0.16;
  double gamma_q = 1.0;      // MHz
  std::vector<double> delta_ac{-0.1, -6.5};  // MHz
  double span = 60.0;        // MHz, number-splitting grid extent on the comb side
  int n_points = 1201;
  bool operator==(const CalibrationConfig&) const = default;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::kCustom;
  SystemConfig system_mhz;
  SystemParams<> system;  // rad/us, derived from system_mhz at load time
  SweepConfig sweep;
  std::vector<double> coupler_list;  // MHz
  std::optional<NoiseConfig> noise;
  OutputConfig output;
  AnalysisConfig analysis;
  CalibrationConfig calibration;
  std::vector<Product> products;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Coupler strengths (MHz) used when a figure scenario gives none.
std::vector<double> default_coupler_list(Scenario scenario, const SystemConfig& system);

/// Parses and validates a document. `scenario_override` replaces the
/// document's scenario before figure presets are applied; presets only fill
/// keys the document leaves out. Throws ValidationError with line/column on
/// malformed input and with the field name on invalid values.
ScenarioConfig load_config(std::string_view text, std::optional<Scenario> scenario_override = {});
ScenarioConfig load_config_file(const std::filesystem::path& path,
                                std::optional<Scenario> scenario_override = {});

/// Inverse of load_config: load_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace ladderqed
