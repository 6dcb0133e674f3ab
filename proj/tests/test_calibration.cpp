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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ladderqed/calibration.hpp"
#include "test_support.hpp"

using namespace ladderqed;
using test::kTwoPi;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("poisson_pmf") {
  CHECK(std::abs(poisson_pmf(0.16, 2) - 0.011) <= 0.0005);
  for (double nbar : {0.0, 0.16, 1.0, 3.7}) {
    CAPTURE(nbar);
    for (int n = 0; n <= 12; ++n)
      CHECK(poisson_pmf(nbar, n) == doctest::Approx(std::exp(-nbar) * std::pow(nbar, n) / factorial(n)).epsilon(1e-12));
  }
  SUBCASE("normalization") {
    for (double nbar : {0.16, 2.0, 25.0, 80.0}) {
      double sum = 0;
      for (int n = 0; n <= 400; ++n) sum += poisson_pmf(nbar, n);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
  SUBCASE("log-space branch joins smoothly") {
    // ratio of successive terms is nbar / n on both sides of the switch
    const double nbar = 18.0;
    for (int n = 18; n <= 24; ++n)
      CHECK(poisson_pmf(nbar, n + 1) / poisson_pmf(nbar, n) == doctest::Approx(nbar / (n + 1)).epsilon(1e-12));
  }
  SUBCASE("edges") {
    CHECK(poisson_pmf(0.0, 0) == 1.0);
    CHECK(poisson_pmf(0.0, 3) == 0.0);
    CHECK_THROWS_AS(poisson_pmf(-0.1, 0), ValidationError);
    CHECK_THROWS_AS(poisson_pmf(0.1, -1), ValidationError);
  }
  SUBCASE("truncation reaches the requested mass") {
    const int cut = poisson_truncation(0.16);
    double mass = 0;
    for (int n = 0; n <= cut; ++n) mass += poisson_pmf(0.16, n);
    CHECK(mass >= 1 - 1e-6);
    CHECK(mass - poisson_pmf(0.16, cut) < 1 - 1e-6);
  }
}

TEST_CASE("ac-Stark conversion") {
  const double chi = kTwoPi * -11.2;
  CHECK(std::abs(stark_to_photons(kTwoPi * -0.1, chi) - 0.0044) <= 0.02 * 0.0044);
  CHECK(std::abs(stark_to_photons(kTwoPi * -6.5, chi) - 0.286) <= 0.02 * 0.286);
  CHECK(photons_to_stark(stark_to_photons(1.7, chi), chi) == doctest::Approx(1.7));
  CHECK_THROWS_AS(stark_to_photons(1.0, 0.0), ValidationError);
}

TEST_CASE("fit_stark_line") {
  const double chi = kTwoPi * -11.2;
  SUBCASE("exact data") {
    std::vector<StarkPoint> pts;
    for (double n : {0.0044, 0.05, 0.12, 0.286}) pts.push_back({n, photons_to_stark(n, chi)});
    const auto fit = fit_stark_line(pts);
    CHECK(fit.slope == doctest::Approx(2 * chi));
    CHECK(fit.chi_shift == doctest::Approx(chi));
    CHECK(fit.residual_rms <= 1e-12);
  }
  SUBCASE("calibration endpoints recover the dispersive shift") {
    const std::vector<StarkPoint> pts{{0.0044, kTwoPi * -0.1}, {0.286, kTwoPi * -6.5}};
    CHECK(std::abs(fit_stark_line(pts).chi_shift - chi) <= 0.02 * std::abs(chi));
  }
  SUBCASE("unbiased under zero-mean noise") {
    // oracle: through-origin regression slope sum(x y) / sum(x^2) on the noisy draws
    double mean_err = 0;
    for (int seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(static_cast<uint64_t>(seed));
      std::normal_distribution<double> noise(0.0, kTwoPi * 0.05);
      std::vector<StarkPoint> pts;
      double sxy = 0, sxx = 0;
      for (int i = 1; i <= 10; ++i) {
        const double n = 0.03 * i;
        const double d = photons_to_stark(n, chi) + noise(rng);
        pts.push_back({n, d});
        sxy += n * d;
        sxx += n * n;
      }
      const auto fit = fit_stark_line(pts);
      CHECK(fit.slope == doctest::Approx(sxy / sxx).epsilon(1e-12));
      mean_err += (fit.chi_shift - chi) / 100.0;
    }
    CHECK(std::abs(mean_err) <= 0.01 * std::abs(chi));
  }
  SUBCASE("rejections") {
    const std::vector<StarkPoint> one{{0.1, 1.0}};
    CHECK_THROWS_AS(fit_stark_line(one), ValidationError);
    const std::vector<StarkPoint> zeros{{0.0, 1.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(fit_stark_line(zeros), ValidationError);
  }
}

TEST_CASE("number_splitting_spectrum") {
  CalibrationParams cal;
  cal.chi_shift = kTwoPi * -11.2;
  cal.nbar = 0.16;
  cal.gamma_q = kTwoPi * 1.0;

  SUBCASE("peaks sit at 2 chi n with Poisson heights") {
    Eigen::VectorXd omega(3);
    omega << 0.0, 2 * cal.chi_shift, 4 * cal.chi_shift;
    const auto s = number_splitting_spectrum(cal, omega);
    // neighbouring lines are ~45 linewidths away, so each peak is its own weight
    for (int n = 0; n < 3; ++n) CHECK(s(n) == doctest::Approx(poisson_pmf(cal.nbar, n)).epsilon(1e-3));
    CHECK(s(1) / s(0) == doctest::Approx(0.16).epsilon(1e-3));
  }
  SUBCASE("matches a direct sum of Lorentzians") {
    const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(301, 4 * cal.chi_shift, -cal.chi_shift);
    const auto s = number_splitting_spectrum(cal, omega);
    const double hw = cal.gamma_q / 2;
    for (Eigen::Index i = 0; i < omega.size(); ++i) {
      double oracle = 0;
      for (int n = 0; n <= 15; ++n) {
        const double d = omega(i) - 2 * cal.chi_shift * n;
        oracle += poisson_pmf(cal.nbar, n) * hw * hw / (d * d + hw * hw);
      }
      CHECK(s(i) == doctest::Approx(oracle).epsilon(1e-6));
    }
  }
  SUBCASE("linear in the Poisson weights") {
    Eigen::VectorXd omega(1);
    omega << 2 * cal.chi_shift;
    CalibrationParams hot = cal;
    hot.nbar = 0.32;
    const double ratio = number_splitting_spectrum(hot, omega)(0) / number_splitting_spectrum(cal, omega)(0);
    CHECK(ratio == doctest::Approx(poisson_pmf(0.32, 1) / poisson_pmf(0.16, 1)).epsilon(1e-3));
  }
  SUBCASE("linewidth must be positive") {
    cal.gamma_q = 0;
    CHECK_THROWS_AS(number_splitting_spectrum(cal, Eigen::VectorXd::Zero(3)), ValidationError);
  }
}

TEST_CASE("fit_number_splitting round trip") {
  CalibrationParams truth;
  truth.chi_shift = kTwoPi * -11.2;
  truth.nbar = 0.16;
  truth.gamma_q = kTwoPi * 1.0;
  const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(1201, kTwoPi * -60, kTwoPi * 6);
  const auto data = number_splitting_spectrum(truth, omega);

  CalibrationParams start = truth;
  start.nbar = 0.25;
  start.chi_shift *= 1.03;
  start.gamma_q *= 1.4;
  const auto fit = fit_number_splitting(omega, data, start);
  CHECK(fit.result.converged);
  CHECK(std::abs(fit.nbar - truth.nbar) <= 0.01 * truth.nbar);
  CHECK(std::abs(fit.chi_shift - truth.chi_shift) <= 0.01 * std::abs(truth.chi_shift));
  CHECK(std::abs(fit.gamma_q - truth.gamma_q) <= 0.01 * truth.gamma_q);
}

TEST_CASE("device metadata is carried through unchanged") {
  DeviceMetadata m;
  CHECK(m.e_j_over_h_ghz == 42.418);
  CHECK(m.omega_cav == doctest::Approx(kTwoPi * 8.121));
}
