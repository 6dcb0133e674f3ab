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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "ladderqed/output.hpp"
#include "ladderqed/scenario.hpp"
#include "test_support.hpp"

using namespace ladderqed;
using test::kTwoPi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ladderqed_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("config defaults and conversion") {
  const auto c = load_config("{}");
  CHECK(c.scenario == Scenario::kCustom);
  CHECK(c.system_mhz.kappa == 1.26);
  CHECK(c.system.kappa == doctest::Approx(kTwoPi * 1.26));
  CHECK(c.system.omega_p == doctest::Approx(kTwoPi * 0.252));
  CHECK(c.sweep.n_points == 801);
  CHECK(!c.noise);
  CHECK(c.output.format == OutputFormat::kCsv);
  CHECK(c.coupler_list == std::vector<double>{0.0});
  CHECK(c.products == std::vector<Product>{Product::kSpectrum});
}

TEST_CASE("figure presets") {
  const auto fig2 = load_config(R"({"scenario": "fig2"})");
  CHECK(fig2.coupler_list == std::vector<double>{0.2, 0.9, 1.8, 3.6, 7.3});
  CHECK(fig2.system_mhz.gamma == 1.18);

  const auto fig4 = load_config("{}", Scenario::kFig4);
  CHECK(fig4.scenario == Scenario::kFig4);
  CHECK(fig4.system_mhz.gamma == 0.02);
  CHECK(fig4.coupler_list == std::vector<double>{0.4, 4.0});
  CHECK(std::find(fig4.products.begin(), fig4.products.end(), Product::kRegime) != fig4.products.end());

  // presets only fill absent keys
  const auto mine = load_config(R"({"scenario": "fig4", "system": {"gamma": 0.5}, "coupler_list": [1.0]})");
  CHECK(mine.system_mhz.gamma == 0.5);
  CHECK(mine.coupler_list == std::vector<double>{1.0});
}

TEST_CASE("config validation") {
  CHECK(field_of([] { load_config(R"({"system": {"kappa": -1.0}})"); }) == "kappa");
  CHECK(field_of([] { load_config(R"({"sweep": {"n_points": 4}})"); }) == "n_points");
  CHECK(field_of([] { load_config(R"({"sweep": {"delta_min": -5}})"); }) != "<no error>");
  CHECK_THROWS_AS(load_config(R"({"sytem": {}})"), ValidationError);
  CHECK_THROWS_AS(load_config(R"({"system": {"kapa": 1}})"), ValidationError);
  CHECK_THROWS_AS(load_config(R"({"scenario": "fig9"})"), ValidationError);
  CHECK_THROWS_AS(load_config(R"({"output": {"format": "xml"}})"), ValidationError);
  CHECK_THROWS_AS(load_config(R"({"noise": {"fraction": -0.1}})"), ValidationError);
  try {
    load_config("{\n  \"system\": {\n    \"kappa\": 1.0,,\n  }\n}");
    FAIL("expected parse error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config_file("/nonexistent/ladderqed.json"), IoError);
}

TEST_CASE("config round trip") {
  const auto original = load_config(R"({
    "scenario": "fig3",
    "system": {"omega_p": 0.1, "f_decay_target": "g1"},
    "sweep": {"delta_min": -20, "delta_max": 20, "n_points": 256},
    "noise": {"fraction": 0.04, "seed": 12345678901},
    "output": {"path": "somewhere", "format": "json"},
    "analysis": {"window": "hann", "fit_horizon": 6},
    "calibration": {"nbar": 0.2, "delta_ac": [-1, -2, -3]}
  })");
  CHECK(load_config(serialize_config(original)) == original);
  CHECK(original.system.f_decay_target == DecayTarget::kG1);
  CHECK(original.noise->seed == 12345678901ULL);
}

TEST_CASE("run_scenario") {
  SUBCASE("fig4 labels") {
    auto c = load_config(R"({"scenario": "fig4", "sweep": {"n_points": 401}})");
    const auto b = run_scenario(c);
    REQUIRE(b.regimes.size() == 2);
    CHECK(b.regimes[0].label == "omega_c_0.4MHz");
    CHECK(b.regimes[0].report.regime == Regime::kEIT);
    CHECK(b.regimes[1].report.regime == Regime::kATS);
    CHECK(b.traces.size() == 2);
    CHECK(b.fits.size() == 4);
  }
  SUBCASE("fig2 doublets") {
    auto c = load_config(R"({"scenario": "fig2"})");
    const auto b = run_scenario(c);
    REQUIRE(b.doublets.size() == 5);
    CHECK(b.doublets.front().report.n_peaks == 1);
    CHECK(b.doublets.back().report.n_peaks == 2);
    for (const auto& t : b.traces) CHECK(t.trace.transmission.maxCoeff() <= 1.0);
    CHECK(b.signals.empty());
  }
  SUBCASE("noise is seeded") {
    auto c = load_config(R"({"coupler_list": [3.6], "sweep": {"n_points": 128}, "noise": {"fraction": 0.04, "seed": 9}})");
    const auto a = run_scenario(c);
    const auto b = run_scenario(c);
    CHECK(a.traces[0].trace.transmission == b.traces[0].trace.transmission);
  }
  SUBCASE("degenerate parameters surface as numerical errors") {
    auto c = load_config(R"({"system": {"kappa": 0, "gamma": 0}, "coupler_list": [1.0], "sweep": {"n_points": 32}})");
    CHECK_THROWS_AS(run_scenario(c), NumericalError);
  }
  SUBCASE("labels") {
    CHECK(coupler_label(7.3) == "omega_c_7.3MHz");
    CHECK(coupler_label(0) == "omega_c_0MHz");
  }
}

TEST_CASE("write_output") {
  SUBCASE("csv files and headers") {
    auto c = load_config(R"({"scenario": "fig4", "sweep": {"n_points": 256}})");
    c.output.path = scratch("csv").string();
    const auto files = write_output(run_scenario(c), c);
    const fs::path dir = c.output.path;
    CHECK(fs::exists(dir / "spectrum_omega_c_0.4MHz.csv"));
    CHECK(fs::exists(dir / "pf_T_omega_c_4MHz.csv"));
    CHECK(fs::exists(dir / "pf_chi_omega_c_4MHz.csv"));
    CHECK(first_line(dir / "spectrum_omega_c_4MHz.csv") ==
          "delta_mhz,T,phi_deg,chi,re_rho10,im_rho10,pop_g1,pop_f0");
    CHECK(first_line(dir / "regimes.csv").rfind("label,kappa_mhz,gamma_mhz,omega_c_mhz,threshold_mhz", 0) == 0);
    CHECK(first_line(dir / "fits.csv") == "label,field,model,converged,iterations,residual_rms,params");
    CHECK(!files.empty());
  }
  SUBCASE("empty bundle writes header-only tables") {
    auto c = load_config("{}");
    c.output.path = scratch("empty").string();
    write_output(ScenarioBundle{}, c);
    const fs::path dir = c.output.path;
    CHECK(slurp(dir / "doublets.csv") == "label,n_peaks,separation_mhz,centers_mhz\n");
    CHECK(fs::exists(dir / "regimes.csv"));
    CHECK(!fs::exists(dir / "calibration.csv"));
  }
  SUBCASE("json round trip to 12 significant digits") {
    auto c = load_config(R"({"coupler_list": [3.6], "sweep": {"n_points": 200}, "products": ["spectrum", "timedomain"]})");
    c.output.path = scratch("json").string();
    c.output.format = OutputFormat::kJson;
    const auto b = run_scenario(c);
    write_output(b, c);
    const fs::path dir = c.output.path;
    const auto t = read_spectrum_json(dir / "spectrum_omega_c_3.6MHz.json");
    const auto& ref = b.traces[0].trace;
    REQUIRE(t.size() == ref.size());
    for (Eigen::Index i = 0; i < ref.size(); ++i) {
      CHECK(t.delta(i) == doctest::Approx(ref.delta(i)).epsilon(1e-11));
      CHECK(t.transmission(i) == doctest::Approx(ref.transmission(i)).epsilon(1e-11));
      CHECK(t.chi(i) == doctest::Approx(ref.chi(i)).epsilon(1e-11).scale(1e-12));
    }
    const auto s = read_signal_json(dir / "pf_T_omega_c_3.6MHz.json");
    REQUIRE(s.size() == b.signals[0].signal.size());
    CHECK(s.values(0) == doctest::Approx(1.0));
  }
  SUBCASE("byte-identical reruns") {
    auto c = load_config(R"({"scenario": "fig4", "sweep": {"n_points": 128}, "noise": {"fraction": 0.04, "seed": 1}})");
    c.output.path = scratch("det_a").string();
    write_output(run_scenario(c), c);
    const fs::path a = c.output.path;
    c.output.path = scratch("det_b").string();
    write_output(run_scenario(c), c);
    const fs::path b = c.output.path;
    for (const auto& entry : fs::directory_iterator(a)) CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  SUBCASE("calibration products") {
    auto c = load_config("{}");
    c.output.path = scratch("cal").string();
    ScenarioBundle b;
    b.calibration = run_calibration(c);
    write_output(b, c);
    CHECK(first_line(fs::path(c.output.path) / "stark_fit.csv") == "slope_mhz,chi_shift_mhz,residual_rms_mhz");
    CHECK(b.calibration->poisson.at(2) == doctest::Approx(poisson_pmf(0.16, 2)));
    CHECK(b.calibration->stark_points.size() == 2);
  }
  SUBCASE("formatting") {
    CHECK(format_value(0.1) == "0.1");
    CHECK(format_value(1.0 / 3.0) == "0.333333333333");
  }
}
