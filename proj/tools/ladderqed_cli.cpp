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

// Command-line front end. Exit codes: 0 success, 1 invalid input or I/O
// failure, 2 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ladderqed/config.hpp"
#include "ladderqed/output.hpp"
#include "ladderqed/scenario.hpp"

namespace {

using namespace ladderqed;

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<double> noise_level;
  std::optional<std::uint64_t> noise_seed;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--noise-level", opts.noise_level, "Uniform noise fraction (0.04 = +-4%)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--noise-seed", opts.noise_seed, "Noise seed");
}

ScenarioConfig make_config(const CommonOptions& opts, std::optional<Scenario> scenario) {
  ScenarioConfig cfg = opts.config_path.empty() ? load_config("", scenario)
                                                : load_config_file(opts.config_path, scenario);
  if (!opts.out_dir.empty()) cfg.output.path = opts.out_dir;
  if (!opts.format.empty()) cfg.output.format = output_format_from_string(opts.format);
  if (opts.noise_level || opts.noise_seed) {
    NoiseConfig noise = cfg.noise.value_or(NoiseConfig{});
    if (opts.noise_level) noise.fraction = *opts.noise_level;
    if (opts.noise_seed) noise.seed = *opts.noise_seed;
    cfg.noise = noise;
  }
  return cfg;
}

void report(const ScenarioBundle& bundle, const std::vector<std::filesystem::path>& files) {
  for (const auto& d : bundle.doublets) {
    std::cout << d.label << ": " << d.report.n_peaks << " peak(s)";
    if (d.report.n_peaks == 2) std::cout << ", separation " << format_value(angular_to_mhz(d.report.separation)) << " MHz";
    std::cout << "\n";
  }
  for (const auto& f : bundle.fits) {
    std::cout << f.label << " F^-1(" << to_string(f.field) << "): " << to_string(f.fit.model)
              << (f.fit.converged ? " converged" : " NOT converged") << ", rms " << format_value(f.fit.residual_rms)
              << "\n";
  }
  for (const auto& r : bundle.regimes)
    std::cout << r.label << ": " << to_string(r.report.regime) << (r.report.resolvable ? " (resolvable)" : "") << "\n";
  if (bundle.calibration) {
    const auto& c = *bundle.calibration;
    for (const auto& p : c.stark_points)
      std::cout << "delta_ac " << format_value(angular_to_mhz(p.delta_ac)) << " MHz -> nbar_c "
                << format_value(p.nbar_c) << "\n";
    if (c.poisson.size() > 2) std::cout << "P(n=2) = " << format_value(c.poisson[2]) << "\n";
  }
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven three-level ladder (cavity + transmon) spectroscopy simulator"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string scenario_name;

  struct Command {
    CLI::App* app;
    std::vector<Product> products;
  };
  const std::vector<Command> commands{
      {app.add_subcommand("spectrum", "Normalized T, phi, chi spectra per coupler strength"),
       {Product::kSpectrum, Product::kDoublet}},
      {app.add_subcommand("timedomain", "Inverse-Fourier time signals P_F(t) of T and chi"),
       {Product::kTimeDomain}},
      {app.add_subcommand("fit", "Fit the time signals (damped cosine, exponential in EIT)"),
       {Product::kTimeDomain, Product::kFit}},
      {app.add_subcommand("classify", "EIT / ATS regime classification per coupler strength"), {Product::kRegime}},
  };
  for (const auto& c : commands) add_common(c.app, opts);
  CLI::App* calibrate = app.add_subcommand("calibrate", "ac-Stark photon calibration and number-splitting comb");
  add_common(calibrate, opts);
  CLI::App* scenario = app.add_subcommand("scenario", "Reproduce a figure data set");
  add_common(scenario, opts);
  scenario->add_option("name", scenario_name, "fig2, fig3 or fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    ScenarioBundle bundle;
    ScenarioConfig cfg;
    if (scenario->parsed()) {
      cfg = make_config(opts, scenario_from_string(scenario_name));
      bundle = run_scenario(cfg);
    } else if (calibrate->parsed()) {
      cfg = make_config(opts, std::nullopt);
      bundle.calibration = run_calibration(cfg);
    } else {
      cfg = make_config(opts, std::nullopt);
      for (const auto& c : commands)
        if (c.app->parsed()) cfg.products = c.products;
      bundle = run_scenario(cfg);
    }
    report(bundle, write_output(bundle, cfg));
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
