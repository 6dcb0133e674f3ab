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
#include <string>

#include "doctest.h"
#include "ladderqed/spectroscopy.hpp"
#include "test_support.hpp"

using namespace ladderqed;
using test::kTwoPi;

namespace {

SweepSpec symmetric_sweep(const SystemParams<>& p, double half_span_mhz, int n) {
  return {-kTwoPi * half_span_mhz, kTwoPi * half_span_mhz, n, p};
}

/// Largest |T(delta) - T(-delta)| type mismatch on a mirrored grid.
template <typename Vec>
double parity_defect(const Vec& v, double sign) {
  const Eigen::Index n = v.size();
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(v(i) - sign * v(n - 1 - i)));
  return worst;
}

}  // namespace

TEST_CASE("sweep_spectrum") {
  SUBCASE("undriven coupler gives the two-level Lorentzian") {
    SystemParams<> p = test::device_params();
    const auto trace = sweep_spectrum(symmetric_sweep(p, 10.0, 201));
    for (Eigen::Index i = 0; i < trace.size(); ++i) {
      const double d = trace.delta(i);
      const double oracle = 0.25 * p.omega_p * p.omega_p /
                            (d * d + 0.25 * p.kappa * p.kappa + 0.5 * p.omega_p * p.omega_p);
      CHECK(trace.transmission_raw(i) == doctest::Approx(oracle).epsilon(1e-10));
    }
    Eigen::Index peak = 0;
    trace.transmission_raw.maxCoeff(&peak);
    CHECK(trace.delta(peak) == doctest::Approx(0.0));
  }
  SUBCASE("strong coupler splits the line by omega_c") {
    SystemParams<> p = test::device_params();
    p.omega_c = kTwoPi * 7.3;
    const auto trace = sweep_spectrum(symmetric_sweep(p, 15.0, 1201));
    const Eigen::Index half = trace.size() / 2;
    Eigen::Index lo = 0, hi = 0;
    trace.transmission_raw.head(half).maxCoeff(&lo);
    trace.transmission_raw.tail(half).maxCoeff(&hi);
    const double separation = trace.delta(trace.size() - half + hi) - trace.delta(lo);
    CHECK(std::abs(separation - p.omega_c) <= 0.05 * p.omega_c);
  }
  SUBCASE("mirrored grid: T even, chi odd") {
    SystemParams<> p = test::device_params();
    p.omega_c = kTwoPi * 3.6;
    const auto trace = sweep_spectrum(symmetric_sweep(p, 12.0, 301));
    CHECK(parity_defect(trace.transmission, 1.0) <= 1e-9);
    CHECK(parity_defect(trace.chi, -1.0) <= 1e-9);
    CHECK(parity_defect(trace.pop_f0, 1.0) <= 1e-9);
  }
  SUBCASE("per-sample fields are consistent") {
    SystemParams<> p = test::device_params();
    p.omega_c = kTwoPi * 1.8;
    const auto trace = sweep_spectrum(symmetric_sweep(p, 10.0, 64));
    for (Eigen::Index i = 0; i < trace.size(); ++i) {
      CHECK(trace.chi(i) == trace.rho10(i).real());
      CHECK(trace.pop_g1(i) == trace.transmission_raw(i));
      CHECK(trace.pop_g1(i) >= 0.0);
      CHECK(trace.pop_f0(i) >= 0.0);
      CHECK(trace.pop_f0(i) <= 1.0);
      CHECK(std::tan(trace.phi(i)) == doctest::Approx(trace.rho10(i).real() / trace.rho10(i).imag()));
      if (i > 0) CHECK(trace.delta(i) > trace.delta(i - 1));
    }
  }
  SUBCASE("invalid sweeps rejected") {
    SystemParams<> p = test::device_params();
    CHECK_THROWS_AS(sweep_spectrum({1.0, -1.0, 64, p}), ValidationError);
    CHECK_THROWS_AS(sweep_spectrum({-1.0, 1.0, 8, p}), ValidationError);
  }
  SUBCASE("solver failures carry the offending detuning") {
    SystemParams<> p;
    p.omega_p = 1.0;
    p.omega_c = 1.0;
    try {
      sweep_spectrum({-1.0, 1.0, 16, p});
      FAIL("expected degeneracy");
    } catch (const DegenerateSteadyStateError& e) {
      CHECK(std::string(e.what()).find("at delta = -1") != std::string::npos);
    }
  }
}

TEST_CASE("default grid") {
  SystemParams<> p = test::device_params();
  auto spec = SweepSpec::default_for(p);
  CHECK(spec.n_points == 801);
  CHECK(spec.delta_max == doctest::Approx(15 * kTwoPi));
  p.omega_c = kTwoPi * 40.0;
  spec = SweepSpec::default_for(p);
  CHECK(spec.delta_max == doctest::Approx(2 * p.omega_c + 8 * p.kappa));
  CHECK(spec.delta_min == -spec.delta_max);
}

TEST_CASE("transmission phase convention") {
  CHECK(transmission_phase({0.0, -0.3}) == doctest::Approx(0.0));
  // tan(phi) = Re / Im
  const std::complex<double> z(0.2, -0.5);
  CHECK(std::tan(transmission_phase(z)) == doctest::Approx(z.real() / z.imag()));
  CHECK(std::abs(transmission_phase({0.0, 0.3})) == doctest::Approx(std::numbers::pi));
  const double singular = dispersion_from_phase(0.5, std::numbers::pi / 2);
  CHECK(std::isfinite(singular));
  CHECK(dispersion_from_phase(0.5, 0.25) == doctest::Approx(0.5 * std::tan(0.25)));
}

TEST_CASE("normalize_spectrum") {
  SystemParams<> p = test::device_params();
  const auto spec = symmetric_sweep(p, 15.0, 401);
  const auto reference = sweep_spectrum(spec);

  SUBCASE("undriven trace against itself peaks at exactly 1") {
    const auto n = normalize_spectrum(reference, reference);
    CHECK(n.transmission.maxCoeff() == 1.0);
  }
  SUBCASE("doublet peaks fall below the undriven peak") {
    SweepSpec driven = spec;
    driven.base_params.omega_c = kTwoPi * 7.3;
    const auto n = normalize_spectrum(sweep_spectrum(driven), reference);
    CHECK(n.transmission.maxCoeff() < 1.0);
    CHECK(n.transmission.maxCoeff() > 0.1);
  }
  SUBCASE("idempotent for a fixed reference") {
    SweepSpec driven = spec;
    driven.base_params.omega_c = kTwoPi * 3.6;
    const auto once = normalize_spectrum(sweep_spectrum(driven), reference);
    const auto twice = normalize_spectrum(once, reference);
    CHECK(once.transmission == twice.transmission);
  }
  SUBCASE("weak-drive scaling of the probe leaves the normalized curve unchanged") {
    SystemParams<> weak = p;
    weak.omega_p = 0.01 * p.kappa;
    SystemParams<> weaker = weak;
    weaker.omega_p *= 0.5;
    auto normalized = [&](const SystemParams<>& base) {
      SweepSpec s = symmetric_sweep(base, 15.0, 401);
      const auto ref = sweep_spectrum(s);
      s.base_params.omega_c = kTwoPi * 4.0;
      return normalize_spectrum(sweep_spectrum(s), ref);
    };
    const auto a = normalized(weak);
    const auto b = normalized(weaker);
    CHECK((a.transmission - b.transmission).cwiseAbs().maxCoeff() <= 1e-3);
  }
  SUBCASE("reference must be undriven, on the same grid, and non-zero") {
    SweepSpec driven = spec;
    driven.base_params.omega_c = kTwoPi * 1.0;
    const auto d = sweep_spectrum(driven);
    CHECK_THROWS_AS(normalize_spectrum(reference, d), ValidationError);
    CHECK_THROWS_AS(normalize_spectrum(reference, sweep_spectrum(symmetric_sweep(p, 10.0, 401))), ValidationError);
    SystemParams<> dark = p;
    dark.omega_p = 0;
    CHECK_THROWS_AS(normalize_spectrum(reference, sweep_spectrum(symmetric_sweep(dark, 15.0, 401))), NumericalError);
  }
}

TEST_CASE("weak_probe_coherence") {
  SystemParams<> p = test::device_params();
  SUBCASE("resonant two-level coherence is -i omega_p / kappa") {
    const auto z = weak_probe_coherence(p);
    CHECK(z.real() == doctest::Approx(0.0));
    CHECK(z.imag() == doctest::Approx(-p.omega_p / p.kappa));
    CHECK(transmission_phase(z) == doctest::Approx(0.0));
  }
  SUBCASE("far detuned limit") {
    p.omega_c = kTwoPi * 4.0;
    p.delta = 1e6;
    const auto z = weak_probe_coherence(p);
    CHECK(z.real() == doctest::Approx(p.omega_p / (2 * p.delta)).epsilon(1e-6));
    CHECK(std::abs(z) < 1e-6);
  }
  SUBCASE("matches the full solver for a weak probe") {
    p.omega_p = 0.01 * p.kappa;
    for (double oc_mhz : {0.0, 0.4, 4.0, 7.3}) {
      CAPTURE(oc_mhz);
      p.omega_c = kTwoPi * oc_mhz;
      const auto trace = sweep_spectrum(SweepSpec::default_for(p));
      double worst = 0, scale = 0;
      for (Eigen::Index i = 0; i < trace.size(); ++i) {
        SystemParams<> q = p;
        q.delta = trace.delta(i);
        const auto analytic = weak_probe_coherence(q);
        worst = std::max(worst, std::abs(trace.rho10(i) - analytic));
        scale = std::max(scale, std::abs(analytic));
      }
      CHECK(worst / scale <= 1e-3);
    }
  }
  SUBCASE("weak-drive population matches the Lorentzian to 1%") {
    p.omega_p = 0.05 * p.kappa;
    const auto trace = sweep_spectrum(symmetric_sweep(p, 15.0, 301));
    for (Eigen::Index i = 0; i < trace.size(); ++i) {
      const double d = trace.delta(i);
      const double lorentzian = 0.25 * p.omega_p * p.omega_p / (d * d + 0.25 * p.kappa * p.kappa);
      CHECK(trace.pop_g1(i) == doctest::Approx(lorentzian).epsilon(0.01));
    }
  }
}

TEST_CASE("inject_noise") {
  SystemParams<> p = test::device_params();
  p.omega_c = kTwoPi * 3.6;
  const auto clean = sweep_spectrum(symmetric_sweep(p, 15.0, 201));

  SUBCASE("zero fraction is the identity") {
    const auto same = inject_noise(clean, 0.0, 99);
    CHECK(same.transmission == clean.transmission);
    CHECK(same.phi == clean.phi);
    CHECK(same.chi == clean.chi);
  }
  SUBCASE("bands: +-4% of T and +-7 degrees of phase") {
    const auto noisy = inject_noise(clean, 0.04, 5);
    const double max_phase = 7.0 * std::numbers::pi / 180.0;
    for (Eigen::Index i = 0; i < clean.size(); ++i) {
      CHECK(std::abs(noisy.transmission(i) - clean.transmission(i)) <= 0.04 * clean.transmission(i) + 1e-15);
      CHECK(std::abs(std::remainder(noisy.phi(i) - clean.phi(i), kTwoPi)) <= max_phase + 1e-12);
      CHECK(noisy.chi(i) == doctest::Approx(dispersion_from_phase(noisy.transmission(i), noisy.phi(i))));
    }
  }
  SUBCASE("peak T of 0.05 moves by at most 0.002") {
    SpectrumTrace t = clean;
    t.transmission.setConstant(0.05);
    const auto noisy = inject_noise(t, 0.04, 17);
    CHECK((noisy.transmission.array() - 0.05).abs().maxCoeff() <= 0.002 + 1e-15);
  }
  SUBCASE("seed determinism") {
    const auto a = inject_noise(clean, 0.04, 1);
    const auto b = inject_noise(clean, 0.04, 1);
    const auto c = inject_noise(clean, 0.04, 2);
    CHECK(a.transmission == b.transmission);
    CHECK(a.phi == b.phi);
    CHECK(a.transmission != c.transmission);
  }
  SUBCASE("negative fraction rejected") { CHECK_THROWS_AS(inject_noise(clean, -0.1, 1), ValidationError); }
}
