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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ladderqed {

struct LeastSquaresOptions {
  int max_iterations = 500;
  double relative_step_tolerance = 1e-9;
  double gradient_tolerance = 1e-10;
  double initial_damping = 1e-3;
  double max_damping = 1e16;
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double residual_rms = 0;
  double gradient_norm = 0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

/// y ~ f(x; p), evaluated pointwise.
using ModelFunction = std::function<double(double x, const Eigen::VectorXd& p)>;

/// Damped Gauss-Newton (Levenberg-Marquardt, Marquardt diagonal scaling) on
/// sum_i (y_i - f(x_i; p))^2 with a central finite-difference Jacobian.
/// Stops on relative step < tolerance or gradient norm < tolerance. A failed
/// run returns the best parameters seen with converged = false.
LeastSquaresResult levenberg_marquardt(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const ModelFunction& model, const Eigen::VectorXd& initial,
                                       const LeastSquaresOptions& options = {});

enum class FitModel {
  kLorentzian,   // amplitude (fwhm/2)^2 / ((x - center)^2 + (fwhm/2)^2) + offset
  kExponential,  // amplitude exp(-rate x) + offset
  kDampedCosine  // amplitude exp(-decay x) cos(frequency x + phase) + offset
};

std::string_view to_string(FitModel model);
FitModel fit_model_from_string(std::string_view name);

/// Parameter order of each model, matching FitOutcome::params.
///   lorentzian:    center, fwhm, amplitude, offset
///   exponential:   amplitude, rate, offset
///   damped_cosine: amplitude, decay, frequency, phase, offset
const std::vector<std::string>& parameter_names(FitModel model);

double evaluate_model(FitModel model, double x, const Eigen::VectorXd& params);

struct FitOutcome {
  FitModel model = FitModel::kLorentzian;
  Eigen::VectorXd params;
  double residual_rms = 0;
  double gradient_norm = 0;
  bool converged = false;
  int iterations = 0;

  double param(std::string_view name) const;
};

FitOutcome nlls_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, FitModel model,
                    const Eigen::VectorXd& initial, const LeastSquaresOptions& options = {});

/// Data-driven starting point: half-max scan for the Lorentzian, log-linear
/// regression for the exponential, transform argmax of the detrended signal
/// for the damped cosine.
Eigen::VectorXd initial_guess(const Eigen::VectorXd& x, const Eigen::VectorXd& y, FitModel model);

inline FitOutcome nlls_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, FitModel model) {
  return nlls_fit(x, y, model, initial_guess(x, y, model));
}

}  // namespace ladderqed
