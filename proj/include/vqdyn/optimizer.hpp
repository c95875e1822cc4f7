// Copyright 2026 The vqdyn Authors
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

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vqdyn/ansatz.hpp"
#include "vqdyn/models.hpp"
#include "vqdyn/state.hpp"

namespace vqdyn {

struct OptimizerConfig {
  double learning_rate = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_adam = 1e-8;
  double grad_tolerance = 1e-5;  // infinity norm of the infidelity gradient
  int max_iterations = 500;
  bool scaled_cost = true;  // minimize infidelity / dt^2 instead of infidelity
};

struct CostEvaluation {
  double infidelity = 0.0;
  double fidelity = 1.0;
  double scaled_cost = 0.0;  // infidelity / dt^2 when scaling is enabled, else infidelity
};

inline CostEvaluation make_cost_evaluation(double fidelity_value, double dt, bool scaled) {
  if (fidelity_value < -1e-9 || fidelity_value > 1.0 + 1e-9) {
    throw std::runtime_error("fidelity outside [0, 1] beyond roundoff tolerance");
  }
  CostEvaluation eval;
  eval.fidelity = std::min(1.0, std::max(0.0, fidelity_value));
  eval.infidelity = 1.0 - eval.fidelity;
  if (scaled) {
    if (dt <= 0.0) throw std::invalid_argument("scaled cost requires dt > 0");
    eval.scaled_cost = eval.infidelity / (dt * dt);
  } else {
    eval.scaled_cost = eval.infidelity;
  }
  return eval;
}

/// Two-point parameter-shift derivative for costs generated by full-angle
/// Pauli rotations e^{-i theta A}. Such costs are trigonometric with angular
/// frequency 2, so the exact rule is [f(x+s) - f(x-s)] / sin(2s) with s = pi/4.
inline double shift_gradient(const std::function<double(double)>& cost_fn, double at) {
  constexpr double kShift = std::numbers::pi / 4.0;
  return (cost_fn(at + kShift) - cost_fn(at - kShift)) / std::sin(2.0 * kShift);
}

/// Cost of matching a fixed target state: 1 - |<psi(params)|target>|^2.
inline CostEvaluation overlap_cost(const AnsatzCircuit& circ, std::span<const double> params,
                                   const StateVector& target, double dt, bool scaled) {
  const StateVector trial = circ.prepare(params);
  return make_cost_evaluation(std::norm(inner(trial, target)), dt, scaled);
}

/// Parameter-shift gradient of the infidelity 1 - |<psi(params)|target>|^2
/// with respect to every parameter.
///
/// The +-pi/4 shifted fidelities are evaluated exactly; shared gate prefixes
/// are reused by sweeping a bra/ket pair through the circuit once instead of
/// re-preparing the state per coordinate, which leaves the two-point values
/// (and therefore the gradient) unchanged.
inline std::vector<double> infidelity_gradient(const AnsatzCircuit& circ,
                                               std::span<const double> params,
                                               const StateVector& target) {
  constexpr double kShift = std::numbers::pi / 4.0;
  const auto& gates = circ.gates();
  std::vector<double> grad(static_cast<std::size_t>(circ.num_parameters()), 0.0);
  if (gates.empty()) return grad;

  // Walk i = last..first maintaining L = G_i^dag ... (full state) and
  // R = G_i^dag ... (target), so that the shifted overlaps become
  // <L| e^{+-i pi/4 A_i} |R>.
  StateVector left = circ.prepare(params);
  StateVector right = target;
  StateVector scratch;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    const double theta = params[static_cast<std::size_t>(it->parameter_index)];
    apply_pauli_rotation_in_place(it->generator, -theta, right);
    apply_pauli_rotation_in_place(it->generator, -theta, left);
    scratch = right;
    apply_pauli_rotation_in_place(it->generator, -kShift, scratch);
    const double f_plus = std::norm(inner(left, scratch));
    scratch = right;
    apply_pauli_rotation_in_place(it->generator, kShift, scratch);
    const double f_minus = std::norm(inner(left, scratch));
    grad[static_cast<std::size_t>(it->parameter_index)] =
        -(f_plus - f_minus) / std::sin(2.0 * kShift);
  }
  return grad;
}

/// The pVQD step cost: infidelity between |psi(params + dparams)> and the
/// one-Trotter-step evolution of |psi(params)>. dt = 0 stands for an empty
/// Trotter step (identical states at dparams = 0).
inline CostEvaluation fidelity_cost(const AnsatzCircuit& circ, std::span<const double> params,
                                    std::span<const double> dparams, const HamiltonianSum& h,
                                    double t, double dt, bool scaled = true) {
  if (params.size() != dparams.size()) {
    throw std::invalid_argument("fidelity_cost: params/dparams length mismatch");
  }
  if (dt < 0.0) throw std::invalid_argument("fidelity_cost: dt must be non-negative");
  StateVector target = circ.prepare(params);
  if (dt > 0.0) apply_in_place(trotter_step(h, t, dt), target);
  std::vector<double> shifted(params.begin(), params.end());
  for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += dparams[k];
  return overlap_cost(circ, shifted, target, dt, scaled);
}

struct AdamResult {
  std::vector<double> best_params;
  CostEvaluation best_cost;
  int iterations = 0;
  bool converged = false;
};

/// Adam minimization with two stopping criteria: the infinity norm of the
/// gradient falls below grad_tolerance, or max_iterations updates have been
/// performed. Returns the best-seen point rather than the last iterate.
///
/// cost_and_grad must return the cost evaluation together with the gradient of
/// the infidelity; gradient_scale multiplies the gradient fed to the Adam
/// update (1/dt^2 for the scaled cost) while the tolerance check stays on the
/// unscaled gradient.
inline AdamResult adam_minimize(
    const std::function<std::pair<CostEvaluation, std::vector<double>>(const std::vector<double>&)>&
        cost_and_grad,
    std::vector<double> initial, const OptimizerConfig& config, double gradient_scale = 1.0) {
  if (config.learning_rate <= 0.0) throw std::invalid_argument("adam: learning_rate must be positive");
  if (config.max_iterations < 1) throw std::invalid_argument("adam: max_iterations must be >= 1");
  for (double x : initial) {
    if (!std::isfinite(x)) throw std::invalid_argument("adam: non-finite initial point");
  }

  const std::size_t n = initial.size();
  std::vector<double> x = std::move(initial);
  std::vector<double> m(n, 0.0);
  std::vector<double> v(n, 0.0);

  AdamResult result;
  result.best_params = x;

  for (int iter = 0;; ++iter) {
    auto [cost, grad] = cost_and_grad(x);
    if (!std::isfinite(cost.infidelity)) {
      throw std::runtime_error("adam: non-finite cost signals divergence");
    }
    if (grad.size() != n) throw std::logic_error("adam: gradient size mismatch");

    if (iter == 0 || cost.infidelity < result.best_cost.infidelity) {
      result.best_cost = cost;
      result.best_params = x;
    }

    double grad_inf = 0.0;
    for (double g : grad) {
      if (!std::isfinite(g)) throw std::runtime_error("adam: non-finite gradient");
      grad_inf = std::max(grad_inf, std::abs(g));
    }
    if (grad_inf < config.grad_tolerance) {
      result.iterations = iter;
      result.converged = true;
      return result;
    }
    if (iter == config.max_iterations) {
      result.iterations = iter;
      result.converged = false;
      return result;
    }

    const double bias1 = 1.0 - std::pow(config.beta1, iter + 1);
    const double bias2 = 1.0 - std::pow(config.beta2, iter + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double g = gradient_scale * grad[k];
      m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * g;
      v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * g * g;
      const double m_hat = m[k] / bias1;
      const double v_hat = v[k] / bias2;
      x[k] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps_adam);
    }
  }
}

}  // namespace vqdyn
