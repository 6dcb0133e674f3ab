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

#include "ladderqed/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "ladderqed/errors.hpp"

namespace ladderqed {

namespace {

Eigen::VectorXd residuals(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const ModelFunction& model,
                          const Eigen::VectorXd& p) {
  Eigen::VectorXd r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) r(i) = y(i) - model(x(i), p);
  return r;
}

/// d f(x_i; p) / d p_j by central differences.
Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const ModelFunction& model, const Eigen::VectorXd& p) {
  const double base_step = std::cbrt(std::numeric_limits<double>::epsilon());
  Eigen::MatrixXd jac(x.size(), p.size());
  Eigen::VectorXd probe = p;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double h = base_step * std::max(std::abs(p(j)), 1.0);
    probe(j) = p(j) + h;
    const double up_h = probe(j) - p(j);
    Eigen::VectorXd up(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) up(i) = model(x(i), probe);
    probe(j) = p(j) - h;
    const double down_h = p(j) - probe(j);
    for (Eigen::Index i = 0; i < x.size(); ++i) jac(i, j) = (up(i) - model(x(i), probe)) / (up_h + down_h);
    probe(j) = p(j);
  }
  return jac;
}

}  // namespace

LeastSquaresResult levenberg_marquardt(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const ModelFunction& model, const Eigen::VectorXd& initial,
                                       const LeastSquaresOptions& options) {
  if (x.size() != y.size()) throw ValidationError("x and y differ in length", "y");
  if (!initial.allFinite()) throw ValidationError("initial parameters must be finite", "initial");
  if (x.size() < 2 * initial.size()) {
    std::ostringstream os;
    os << "need at least " << 2 * initial.size() << " samples for " << initial.size() << " parameters, got "
       << x.size();
    throw ValidationError(os.str(), "x");
  }

  LeastSquaresResult out;
  Eigen::VectorXd p = initial;
  Eigen::VectorXd r = residuals(x, y, model, p);
  double cost = r.squaredNorm();
  if (!std::isfinite(cost)) throw ValidationError("model is not finite at the initial parameters", "initial");

  Eigen::MatrixXd jac = jacobian(x, model, p);
  Eigen::VectorXd grad = jac.transpose() * r;
  double damping = options.initial_damping;

  const auto finish = [&](bool converged, std::string message) {
    out.params = p;
    out.residual_rms = std::sqrt(cost / static_cast<double>(x.size()));
    out.gradient_norm = grad.norm();
    out.converged = converged && std::isfinite(out.residual_rms);
    out.message = std::move(message);
    return out;
  };

  for (out.iterations = 1; out.iterations <= options.max_iterations; ++out.iterations) {
    if (grad.norm() < options.gradient_tolerance) return finish(true, "gradient norm below tolerance");

    const Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd scale = normal.diagonal();
    const double floor = std::max(scale.maxCoeff(), 1.0) * 1e-15;
    scale = scale.cwiseMax(floor);
    const Eigen::MatrixXd system = normal + damping * Eigen::MatrixXd(scale.asDiagonal());
    const Eigen::VectorXd step = system.ldlt().solve(grad);

    if (step.allFinite()) {
      const Eigen::VectorXd trial = p + step;
      const Eigen::VectorXd trial_r = residuals(x, y, model, trial);
      const double trial_cost = trial_r.squaredNorm();
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        const double relative_step = step.norm() / (p.norm() + std::numeric_limits<double>::min());
        p = trial;
        r = trial_r;
        cost = trial_cost;
        jac = jacobian(x, model, p);
        grad = jac.transpose() * r;
        damping = std::max(damping / 3.0, 1e-15);
        if (relative_step < options.relative_step_tolerance)
          return finish(true, "relative parameter change below tolerance");
        continue;
      }
    }
    damping *= 4.0;
    if (damping > options.max_damping)
      return finish(false, "damping escalation exhausted (degenerate Jacobian or no descent)");
  }
  out.iterations = options.max_iterations;
  return finish(false, "iteration limit reached");
}

std::string_view to_string(FitModel model) {
  switch (model) {
    case FitModel::kLorentzian:
      return "lorentzian";
    case FitModel::kExponential:
      return "exponential";
    case FitModel::kDampedCosine:
      return "damped_cosine";
  }
  return "unknown";
}

FitModel fit_model_from_string(std::string_view name) {
  for (auto m : {FitModel::kLorentzian, FitModel::kExponential, FitModel::kDampedCosine})
    if (to_string(m) == name) return m;
  throw ValidationError("unknown fit model '" + std::string(name) + "'", "model");
}

const std::vector<std::string>& parameter_names(FitModel model) {
  static const std::vector<std::string> lorentzian{"center", "fwhm", "amplitude", "offset"};
  static const std::vector<std::string> exponential{"amplitude", "rate", "offset"};
  static const std::vector<std::string> damped_cosine{"amplitude", "decay", "frequency", "phase", "offset"};
  switch (model) {
    case FitModel::kLorentzian:
      return lorentzian;
    case FitModel::kExponential:
      return exponential;
    case FitModel::kDampedCosine:
      break;
  }
  return damped_cosine;
}

double evaluate_model(FitModel model, double x, const Eigen::VectorXd& p) {
  switch (model) {
    case FitModel::kLorentzian: {
      const double hw = 0.5 * p(1);
      const double dx = x - p(0);
      return p(2) * hw * hw / (dx * dx + hw * hw) + p(3);
    }
    case FitModel::kExponential:
      return p(0) * std::exp(-p(1) * x) + p(2);
    case FitModel::kDampedCosine:
      return p(0) * std::exp(-p(1) * x) * std::cos(p(2) * x + p(3)) + p(4);
  }
  return 0;
}

double FitOutcome::param(std::string_view name) const {
  const auto& names = parameter_names(model);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw ValidationError("model " + std::string(to_string(model)) + " has no parameter '" + std::string(name) + "'",
                          "name");
  return params(std::distance(names.begin(), it));
}

FitOutcome nlls_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, FitModel model,
                    const Eigen::VectorXd& initial, const LeastSquaresOptions& options) {
  const auto expected = static_cast<Eigen::Index>(parameter_names(model).size());
  if (initial.size() != expected) {
    std::ostringstream os;
    os << to_string(model) << " takes " << expected << " parameters, got " << initial.size();
    throw ValidationError(os.str(), "initial");
  }
  const auto result = levenberg_marquardt(
      x, y, [model](double xi, const Eigen::VectorXd& p) { return evaluate_model(model, xi, p); }, initial,
      options);
  return {model, result.params, result.residual_rms, result.gradient_norm, result.converged, result.iterations};
}

namespace {

Eigen::VectorXd guess_lorentzian(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::Index peak = 0;
  y.maxCoeff(&peak);
  const double offset = y.minCoeff();
  const double amplitude = y(peak) - offset;
  const double half = offset + 0.5 * amplitude;

  const auto crossing = [&](Eigen::Index from, int dir) -> double {
    for (Eigen::Index i = from; i + dir >= 0 && i + dir < y.size(); i += dir) {
      const Eigen::Index j = i + dir;
      if (y(j) <= half) {
        const double t = (y(i) - half) / (y(i) - y(j));
        return x(i) + t * (x(j) - x(i));
      }
    }
    return dir < 0 ? x(0) : x(x.size() - 1);
  };
  double fwhm = crossing(peak, 1) - crossing(peak, -1);
  if (!(fwhm > 0)) fwhm = (x.maxCoeff() - x.minCoeff()) / 10.0;
  Eigen::VectorXd p(4);
  p << x(peak), fwhm, amplitude, offset;
  return p;
}

Eigen::VectorXd guess_exponential(const Eigen::VectorXd& x, const Eigen::VectorXd& y_in) {
  // Rising curves approach the offset from below; flip them so the log fit sees a decay.
  const double sign = y_in(y_in.size() - 1) > y_in(0) ? -1.0 : 1.0;
  const Eigen::VectorXd y = sign * y_in;
  const double lowest = y.minCoeff();
  const double range = y.maxCoeff() - lowest;
  const double offset = lowest > 0 ? 0.0 : lowest - 1e-3 * std::max(range, 1e-12);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = y(i) - offset;
    if (v <= 0) continue;
    const double ly = std::log(v);
    sx += x(i);
    sy += ly;
    sxx += x(i) * x(i);
    sxy += x(i) * ly;
    ++n;
  }
  double slope = 0, intercept = 0;
  const double denom = n * sxx - sx * sx;
  if (n >= 2 && denom != 0) {
    slope = (n * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / n;
  }
  Eigen::VectorXd p(3);
  p << sign * std::exp(intercept), -slope, sign * offset;
  return p;
}

Eigen::VectorXd guess_damped_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  const double offset = y.mean();
  const Eigen::VectorXd detrended = y.array() - offset;
  const double span = x(n - 1) - x(0);
  const double nyquist = std::numbers::pi * static_cast<double>(n - 1) / span;

  constexpr int kScan = 4096;
  double best_power = -1, best_freq = 0;
  std::complex<double> best_proj;
  for (int k = 1; k <= kScan; ++k) {
    const double w = nyquist * k / kScan;
    std::complex<double> proj = 0;
    for (Eigen::Index i = 0; i < n; ++i) proj += detrended(i) * std::polar(1.0, -w * (x(i) - x(0)));
    if (std::norm(proj) > best_power) {
      best_power = std::norm(proj);
      best_freq = w;
      best_proj = proj;
    }
  }
  const double phase = std::arg(best_proj) - best_freq * x(0);
  const double c = std::cos(phase);
  const double amplitude = std::abs(c) > 0.3 ? detrended(0) / c : detrended.cwiseAbs().maxCoeff();
  Eigen::VectorXd p(5);
  p << amplitude, 2.0 / span, best_freq, std::remainder(phase, 2.0 * std::numbers::pi), offset;
  return p;
}

}  // namespace

Eigen::VectorXd initial_guess(const Eigen::VectorXd& x, const Eigen::VectorXd& y, FitModel model) {
  if (x.size() != y.size() || x.size() < 3) throw ValidationError("need at least 3 matching samples", "x");
  switch (model) {
    case FitModel::kLorentzian:
      return guess_lorentzian(x, y);
    case FitModel::kExponential:
      return guess_exponential(x, y);
    case FitModel::kDampedCosine:
      break;
  }
  return guess_damped_cosine(x, y);
}

}  // namespace ladderqed
