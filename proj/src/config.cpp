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

#include "ladderqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace ladderqed {

namespace {

using nlohmann::json;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<Enum, N>& values, const char* field) {
  for (Enum v : values)
    if (to_string(v) == name) return v;
  throw ValidationError("invalid value '" + std::string(name) + "' for " + field, field);
}

constexpr std::array kScenarios{Scenario::kFig2, Scenario::kFig3, Scenario::kFig4, Scenario::kCustom};
constexpr std::array kFormats{OutputFormat::kCsv, OutputFormat::kJson};
constexpr std::array kProducts{Product::kSpectrum, Product::kDoublet, Product::kTimeDomain, Product::kFit,
                               Product::kRegime};

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      const std::string path = where.empty() ? item.key() : where + "." + item.key();
      throw ValidationError("unknown configuration key '" + path + "'", item.key());
    }
  }
}

const json* section(const json& root, const char* key) {
  const auto it = root.find(key);
  if (it == root.end()) return nullptr;
  if (!it->is_object()) throw ValidationError(std::string(key) + " must be an object", key);
  return &*it;
}

double read_number(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ValidationError(std::string(key) + " must be a number", key);
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string(key) + " must be finite", key);
  return v;
}

int read_int(const json& obj, const char* key, int fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(std::string(key) + " must be an integer", key);
  return it->get<int>();
}

std::string read_string(const json& obj, const char* key, std::string fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw ValidationError(std::string(key) + " must be a string", key);
  return it->get<std::string>();
}

std::vector<double> read_number_list(const json& list, const char* key) {
  if (!list.is_array()) throw ValidationError(std::string(key) + " must be an array of numbers", key);
  std::vector<double> out;
  for (const auto& v : list) {
    if (!v.is_number() || !std::isfinite(v.get<double>()))
      throw ValidationError(std::string(key) + " must contain finite numbers", key);
    out.push_back(v.get<double>());
  }
  return out;
}

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << column;
  return os.str();
}

std::vector<Product> default_products(Scenario scenario) {
  switch (scenario) {
    case Scenario::kFig2:
      return {Product::kSpectrum, Product::kDoublet};
    case Scenario::kFig3:
      return {Product::kSpectrum, Product::kDoublet, Product::kTimeDomain, Product::kFit};
    case Scenario::kFig4:
      return {Product::kSpectrum, Product::kDoublet, Product::kTimeDomain, Product::kFit, Product::kRegime};
    case Scenario::kCustom:
      break;
  }
  return {Product::kSpectrum};
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kFig2:
      return "fig2";
    case Scenario::kFig3:
      return "fig3";
    case Scenario::kFig4:
      return "fig4";
    case Scenario::kCustom:
      break;
  }
  return "custom";
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::kCsv ? "csv" : "json"; }

std::string_view to_string(Product product) {
  switch (product) {
    case Product::kSpectrum:
      return "spectrum";
    case Product::kDoublet:
      return "doublet";
    case Product::kTimeDomain:
      return "timedomain";
    case Product::kFit:
      return "fit";
    case Product::kRegime:
      break;
  }
  return "regime";
}

Scenario scenario_from_string(std::string_view name) { return parse_enum(name, kScenarios, "scenario"); }

OutputFormat output_format_from_string(std::string_view name) { return parse_enum(name, kFormats, "format"); }

SystemParams<> SystemConfig::to_params() const {
  SystemParams<> p;
  p.kappa = mhz_to_angular(kappa);
  p.gamma = mhz_to_angular(gamma);
  p.omega_p = mhz_to_angular(omega_p);
  p.omega_c = mhz_to_angular(omega_c);
  p.delta = mhz_to_angular(delta);
  p.f_decay_target = f_decay_target;
  return p;
}

std::vector<double> default_coupler_list(Scenario scenario, const SystemConfig& system) {
  switch (scenario) {
    case Scenario::kFig2:
    case Scenario::kFig3:
      return {0.2, 0.9, 1.8, 3.6, 7.3};
    case Scenario::kFig4:
      return {0.4, 4.0};
    case Scenario::kCustom:
      break;
  }
  return {system.omega_c};
}

ScenarioConfig load_config(std::string_view text, std::optional<Scenario> scenario_override) {
  json root;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    root = json::object();
  } else {
    try {
      root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ValidationError("configuration parse error at " + locate(text, e.byte) + ": " + e.what(), "document");
    }
  }
  if (!root.is_object()) throw ValidationError("configuration must be a JSON object", "document");
  reject_unknown_keys(root,
                      {"scenario", "system", "sweep", "coupler_list", "noise", "output", "analysis", "calibration",
                       "products"},
                      "");

  ScenarioConfig cfg;
  cfg.scenario = scenario_from_string(read_string(root, "scenario", "custom"));
  if (scenario_override) cfg.scenario = *scenario_override;

  bool gamma_given = false;
  if (const json* s = section(root, "system")) {
    reject_unknown_keys(*s, {"kappa", "gamma", "omega_p", "omega_c", "delta", "f_decay_target"}, "system");
    auto& m = cfg.system_mhz;
    m.kappa = read_number(*s, "kappa", m.kappa);
    m.gamma = read_number(*s, "gamma", m.gamma);
    gamma_given = s->contains("gamma");
    m.omega_p = read_number(*s, "omega_p", m.omega_p);
    m.omega_c = read_number(*s, "omega_c", m.omega_c);
    m.delta = read_number(*s, "delta", m.delta);
    const std::string target = read_string(*s, "f_decay_target", "g0");
    if (target == "g0") {
      m.f_decay_target = DecayTarget::kG0;
    } else if (target == "g1") {
      m.f_decay_target = DecayTarget::kG1;
    } else {
      throw ValidationError("f_decay_target must be 'g0' or 'g1'", "f_decay_target");
    }
  }
  if (cfg.scenario == Scenario::kFig4 && !gamma_given) cfg.system_mhz.gamma = 0.02;

  if (const json* s = section(root, "sweep")) {
    reject_unknown_keys(*s, {"delta_min", "delta_max", "n_points"}, "sweep");
    if (s->contains("delta_min") != s->contains("delta_max"))
      throw ValidationError("sweep needs both delta_min and delta_max", "delta_min");
    if (s->contains("delta_min")) {
      cfg.sweep.delta_min = read_number(*s, "delta_min", 0);
      cfg.sweep.delta_max = read_number(*s, "delta_max", 0);
      if (!(*cfg.sweep.delta_min < *cfg.sweep.delta_max))
        throw ValidationError("sweep needs delta_min < delta_max", "delta_min");
    }
    cfg.sweep.n_points = read_int(*s, "n_points", cfg.sweep.n_points);
  }
  if (cfg.sweep.n_points < SweepSpec::kMinPoints)
    throw ValidationError("sweep n_points must be at least 16", "n_points");

  if (const auto it = root.find("coupler_list"); it != root.end()) {
    cfg.coupler_list = read_number_list(*it, "coupler_list");
  } else {
    cfg.coupler_list = default_coupler_list(cfg.scenario, cfg.system_mhz);
  }
  if (cfg.coupler_list.empty() && cfg.scenario != Scenario::kCustom)
    throw ValidationError("coupler_list must not be empty for figure scenarios", "coupler_list");
  for (double oc : cfg.coupler_list)
    if (oc < 0) throw ValidationError("coupler_list entries must be non-negative", "coupler_list");

  if (const json* s = section(root, "noise")) {
    reject_unknown_keys(*s, {"fraction", "seed"}, "noise");
    NoiseConfig noise;
    noise.fraction = read_number(*s, "fraction", 0.0);
    if (noise.fraction < 0) throw ValidationError("noise fraction must be non-negative", "fraction");
    if (const auto it = s->find("seed"); it != s->end()) {
      if (!it->is_number_unsigned()) throw ValidationError("noise seed must be a non-negative integer", "seed");
      noise.seed = it->get<std::uint64_t>();
    }
    cfg.noise = noise;
  }

  if (const json* s = section(root, "output")) {
    reject_unknown_keys(*s, {"path", "format"}, "output");
    cfg.output.path = read_string(*s, "path", cfg.output.path);
    cfg.output.format = output_format_from_string(read_string(*s, "format", "csv"));
  }

  if (const json* s = section(root, "analysis")) {
    reject_unknown_keys(*s, {"window", "fit_horizon"}, "analysis");
    const std::string window = read_string(*s, "window", "none");
    if (window == "none") {
      cfg.analysis.window = Window::kNone;
    } else if (window == "hann") {
      cfg.analysis.window = Window::kHann;
    } else {
      throw ValidationError("analysis window must be 'none' or 'hann'", "window");
    }
    cfg.analysis.fit_horizon = read_number(*s, "fit_horizon", cfg.analysis.fit_horizon);
    if (!(cfg.analysis.fit_horizon > 0)) throw ValidationError("fit_horizon must be positive", "fit_horizon");
  }

  if (const json* s = section(root, "calibration")) {
    reject_unknown_keys(*s, {"chi_shift", "nbar", "gamma_q", "delta_ac", "span", "n_points"}, "calibration");
    auto& c = cfg.calibration;
    c.chi_shift = read_number(*s, "chi_shift", c.chi_shift);
    c.nbar = read_number(*s, "nbar", c.nbar);
    c.gamma_q = read_number(*s, "gamma_q", c.gamma_q);
    if (const auto it = s->find("delta_ac"); it != s->end()) c.delta_ac = read_number_list(*it, "delta_ac");
    c.span = read_number(*s, "span", c.span);
    c.n_points = read_int(*s, "n_points", c.n_points);
  }
  {
    const auto& c = cfg.calibration;
    if (c.chi_shift == 0) throw ValidationError("chi_shift must be non-zero", "chi_shift");
    if (c.nbar < 0) throw ValidationError("nbar must be non-negative", "nbar");
    if (!(c.gamma_q > 0)) throw ValidationError("gamma_q must be positive", "gamma_q");
    if (!(c.span > 0)) throw ValidationError("calibration span must be positive", "span");
    if (c.n_points < 16) throw ValidationError("calibration n_points must be at least 16", "n_points");
  }

  if (const auto it = root.find("products"); it != root.end()) {
    if (!it->is_array()) throw ValidationError("products must be an array of names", "products");
    for (const auto& p : *it) {
      if (!p.is_string()) throw ValidationError("products must contain strings", "products");
      cfg.products.push_back(parse_enum(p.get<std::string>(), kProducts, "products"));
    }
  } else {
    cfg.products = default_products(cfg.scenario);
  }

  cfg.system = cfg.system_mhz.to_params();
  validate(cfg.system);
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path, std::optional<Scenario> scenario_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_config(buffer.str(), scenario_override);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what(), e.field());
  }
}

std::string serialize_config(const ScenarioConfig& c) {
  nlohmann::ordered_json root;
  root["scenario"] = to_string(c.scenario);
  root["system"] = {{"kappa", c.system_mhz.kappa},
                    {"gamma", c.system_mhz.gamma},
                    {"omega_p", c.system_mhz.omega_p},
                    {"omega_c", c.system_mhz.omega_c},
                    {"delta", c.system_mhz.delta},
                    {"f_decay_target", c.system_mhz.f_decay_target == DecayTarget::kG0 ? "g0" : "g1"}};
  nlohmann::ordered_json sweep = {{"n_points", c.sweep.n_points}};
  if (c.sweep.delta_min) {
    sweep["delta_min"] = *c.sweep.delta_min;
    sweep["delta_max"] = *c.sweep.delta_max;
  }
  root["sweep"] = sweep;
  root["coupler_list"] = c.coupler_list;
  if (c.noise) root["noise"] = {{"fraction", c.noise->fraction}, {"seed", c.noise->seed}};
  root["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  root["analysis"] = {{"window", c.analysis.window == Window::kNone ? "none" : "hann"},
                      {"fit_horizon", c.analysis.fit_horizon}};
  root["calibration"] = {{"chi_shift", c.calibration.chi_shift}, {"nbar", c.calibration.nbar},
                         {"gamma_q", c.calibration.gamma_q},     {"delta_ac", c.calibration.delta_ac},
                         {"span", c.calibration.span},           {"n_points", c.calibration.n_points}};
  auto products = nlohmann::ordered_json::array();
  for (Product p : c.products) products.push_back(to_string(p));
  root["products"] = products;
  return root.dump(2) + "\n";
}

}  // namespace ladderqed
