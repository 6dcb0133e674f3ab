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

#include "ladderqed/spectroscopy.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "parallel.hpp"

namespace ladderqed {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phi) { return std::remainder(phi, 2.0 * kPi); }

}  // namespace

SweepSpec SweepSpec::default_for(const SystemParams<>& params, int n_points) {
  const double half_span = std::max(15.0 * 2.0 * kPi, 2.0 * params.omega_c + 8.0 * params.kappa);
  return {-half_span, half_span, n_points, params};
}

void SweepSpec::validate() const {
  if (!(delta_min < delta_max)) throw ValidationError("sweep needs delta_min < delta_max", "delta_min");
  if (n_points < kMinPoints) {
    std::ostringstream os;
    os << "sweep needs at least " << kMinPoints << " points, got " << n_points;
    throw ValidationError(os.str(), "n_points");
  }
  ladderqed::validate(base_params);
}

Eigen::VectorXd SweepSpec::grid() const {
  return Eigen::VectorXd::LinSpaced(n_points, delta_min, delta_max);
}

void SpectrumTrace::resize(Eigen::Index n) {
  delta.resize(n);
  transmission_raw.resize(n);
  transmission.resize(n);
  phi.resize(n);
  chi.resize(n);
  rho10.resize(n);
  pop_g1.resize(n);
  pop_f0.resize(n);
}

double transmission_phase(std::complex<double> rho10) {
  return std::atan2(-rho10.real(), -rho10.imag());
}

double dispersion_from_phase(double transmission, double phi) {
  constexpr double kCosFloor = 1e-12;
  double c = std::cos(phi);
  if (std::abs(c) < kCosFloor) c = std::copysign(kCosFloor, c);
  return transmission * std::sin(phi) / c;
}

SpectrumTrace sweep_spectrum(const SweepSpec& spec) {
  spec.validate();
  SpectrumTrace trace;
  trace.params = spec.base_params;
  trace.params.delta = 0;
  trace.resize(spec.n_points);
  trace.delta = spec.grid();

  detail::parallel_for(static_cast<std::size_t>(spec.n_points), [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k);
    SystemParams<> p = spec.base_params;
    p.delta = trace.delta(i);
    try {
      const auto rho = steady_state(build_liouvillian(p));
      const std::complex<double> coherence = rho(kG1, kG0);
      trace.transmission_raw(i) = rho.population(kG1);
      trace.transmission(i) = trace.transmission_raw(i);
      trace.rho10(i) = coherence;
      trace.phi(i) = transmission_phase(coherence);
      trace.chi(i) = coherence.real();
      trace.pop_g1(i) = rho.population(kG1);
      trace.pop_f0(i) = rho.population(kF0);
    } catch (const DegenerateSteadyStateError& e) {
      std::ostringstream os;
      os << e.what() << " at delta = " << p.delta << " rad/us";
      throw DegenerateSteadyStateError(os.str(), e.null_dimension());
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << e.what() << " at delta = " << p.delta << " rad/us";
      throw NumericalError(os.str());
    }
  });
  return trace;
}

SpectrumTrace normalize_spectrum(const SpectrumTrace& trace, const SpectrumTrace& reference) {
  if (reference.params.omega_c != 0.0)
    throw ValidationError("normalization reference must be undriven (omega_c = 0)", "reference");
  if (reference.size() != trace.size() || reference.delta != trace.delta)
    throw ValidationError("normalization reference must share the trace's detuning grid", "reference");
  const double peak = reference.size() > 0 ? reference.transmission_raw.maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw NumericalError("undriven reference has zero transmission");
  SpectrumTrace out = trace;
  out.transmission = trace.transmission_raw / peak;
  return out;
}

std::complex<double> weak_probe_coherence(const SystemParams<>& params) {
  using namespace std::complex_literals;
  const double d = params.delta;
  const std::complex<double> cavity = d + 0.5i * params.kappa;
  const std::complex<double> qubit = d + 0.5i * params.gamma;
  return 0.5 * params.omega_p * qubit / (cavity * qubit - 0.25 * params.omega_c * params.omega_c);
}

SpectrumTrace inject_noise(const SpectrumTrace& trace, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0)) throw ValidationError("noise fraction must be non-negative", "fraction");
  if (fraction == 0.0) return trace;

  constexpr double kPhaseDegPerFraction = 7.0 / 0.04;
  const double phase_band = fraction * kPhaseDegPerFraction * kPi / 180.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SpectrumTrace out = trace;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double scale = 1.0 + fraction * unit(rng);
    out.transmission(i) *= scale;
    out.transmission_raw(i) *= scale;
    out.phi(i) = wrap_phase(out.phi(i) + phase_band * unit(rng));
    out.chi(i) = dispersion_from_phase(out.transmission(i), out.phi(i));
  }
  return out;
}

}  // namespace ladderqed
