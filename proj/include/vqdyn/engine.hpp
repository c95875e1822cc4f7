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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vqdyn/ansatz.hpp"
#include "vqdyn/hamiltonian.hpp"
#include "vqdyn/models.hpp"
#include "vqdyn/optimizer.hpp"
#include "vqdyn/pools.hpp"
#include "vqdyn/state.hpp"

namespace vqdyn {

enum class ThresholdMode { scaled, raw };
enum class TrialGateInsertion { circuit_end, adjacent_initial };

struct EngineConfig {
  double dt = 0.05;
  double t_final = 1.0;
  double epsilon = 1e-4;  // per-step convergence threshold
  ThresholdMode threshold_mode = ThresholdMode::scaled;
  int max_adaptive_layers_per_step = 20;
  TrialGateInsertion trial_gate_insertion = TrialGateInsertion::circuit_end;
  bool rescore_within_layer = false;
  CoefficientEval trotter_eval = CoefficientEval::midpoint;
  int threads = 1;
};

struct ScoredOperator {
  PauliString op;
  double score = 0.0;  // |d fidelity / d theta| of the trial gate
};

/// One adaptive layer: generators chosen together plus the depth bookkeeping.
struct LayerEvent {
  std::vector<PauliString> generators;
  int depth_before = 0;
  int depth_after = 0;
};

struct StepRecord {
  double t = 0.0;
  double cost = 0.0;         // infidelity of the accepted step
  double scaled_cost = 0.0;  // infidelity / dt^2
  bool converged = true;     // cost below epsilon in the configured mode
  bool layer_budget_exhausted = false;
  int optimizer_iterations = 0;
  int n_gates = 0;
  std::vector<double> params;
  std::vector<PauliString> gates_added;
  std::vector<LayerEvent> layer_events;
  long long cnots = 0;
  int circuit_depth = 0;
  std::vector<double> observable_values;
  StateVector state;
};

struct TrajectoryLog {
  std::vector<StepRecord> records;
  AnsatzCircuit final_circuit;
  std::vector<std::pair<std::string, std::string>> metadata;
  bool aborted = false;
  std::string abort_reason;
};

namespace detail {

// Static work distribution with per-index output slots keeps results
// independent of the worker count.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> group;
  group.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    group.emplace_back([&] {
      for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) fn(k);
    });
  }
  for (auto& th : group) th.join();
}

}  // namespace detail

/// Trial-gate gradient magnitudes against a fixed target state.
///
/// For each pool operator the trial gate e^{-i theta_a A_a} is placed per the
/// insertion mode with theta_a = 0 and the fidelity derivative is evaluated by
/// the two-point parameter-shift rule. Evaluations are independent across
/// operators and may run on a worker group.
inline std::vector<ScoredOperator> pool_scores_with_target(const AnsatzCircuit& circ,
                                                           std::span<const double> params,
                                                           const StateVector& target,
                                                           const OperatorPool& pool,
                                                           TrialGateInsertion insertion,
                                                           int threads = 1) {
  constexpr double kShift = std::numbers::pi / 4.0;
  StateVector base;
  StateVector ref;
  if (insertion == TrialGateInsertion::circuit_end) {
    base = circ.prepare(params);
    ref = target;
  } else {
    // Trial gate adjacent to the initial state: fold the circuit into the
    // reference side, F(theta_a) = |<e^{-i theta_a A} psi_0 | U^dag target>|^2.
    base = basis_state(circ.initial_bits());
    ref = target;
    const auto& gates = circ.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      apply_pauli_rotation_in_place(it->generator,
                                    -params[static_cast<std::size_t>(it->parameter_index)], ref);
    }
  }

  std::vector<ScoredOperator> scores(pool.size());
  detail::parallel_for(pool.size(), threads, [&](std::size_t k) {
    const PauliString& op = pool.operators[k];
    StateVector shifted = base;
    apply_pauli_rotation_in_place(op, kShift, shifted);
    const double f_plus = std::norm(inner(shifted, ref));
    shifted = base;
    apply_pauli_rotation_in_place(op, -kShift, shifted);
    const double f_minus = std::norm(inner(shifted, ref));
    scores[k] = {op, std::abs((f_plus - f_minus) / std::sin(2.0 * kShift))};
  });
  return scores;
}

/// Pool gradient scores for one pVQD step: the target is the one-Trotter-step
/// evolution of |psi(params)>. dt = 0 stands for an empty step, for which all
/// scores vanish.
inline std::vector<ScoredOperator> pool_scores(const AnsatzCircuit& circ,
                                               std::span<const double> params,
                                               const HamiltonianSum& h, double t, double dt,
                                               const OperatorPool& pool,
                                               TrialGateInsertion insertion =
                                                   TrialGateInsertion::circuit_end,
                                               CoefficientEval eval = CoefficientEval::midpoint,
                                               int threads = 1) {
  if (pool.empty()) throw std::invalid_argument("pool_scores: empty pool");
  if (dt < 0.0) throw std::invalid_argument("pool_scores: dt must be non-negative");
  StateVector target = circ.prepare(params);
  if (dt > 0.0) apply_in_place(trotter_step(h, t, dt, eval), target);
  return pool_scores_with_target(circ, params, target, pool, insertion, threads);
}

struct AdaptiveLayerResult {
  AnsatzCircuit circuit;
  std::vector<PauliString> chosen;
};

/// One TETRIS layer: repeatedly pick the operator with the largest |score|
/// (ties resolved by pool order), drop every pool operator overlapping its
/// support, until the working pool is empty. Chosen generators are appended
/// with fresh zero parameters; their supports are pairwise disjoint.
inline AdaptiveLayerResult adaptive_layer(const AnsatzCircuit& circ,
                                          const std::vector<ScoredOperator>& scores) {
  if (scores.empty()) throw std::invalid_argument("adaptive_layer: empty pool");
  std::vector<char> alive(scores.size(), 1);
  std::vector<PauliString> chosen;
  while (true) {
    int best = -1;
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (alive[k] && (best < 0 || scores[k].score > scores[static_cast<std::size_t>(best)].score)) {
        best = static_cast<int>(k);
      }
    }
    if (best < 0) break;
    const std::uint64_t occupied = scores[static_cast<std::size_t>(best)].op.support_mask();
    chosen.push_back(scores[static_cast<std::size_t>(best)].op);
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (alive[k] && (scores[k].op.support_mask() & occupied) != 0) alive[k] = 0;
    }
  }
  return {circ.append_gates(chosen), chosen};
}

namespace detail {

inline double threshold_value(double infidelity, double dt, ThresholdMode mode) {
  return mode == ThresholdMode::scaled ? infidelity / (dt * dt) : infidelity;
}

inline long long step_count(const EngineConfig& ec) {
  if (!(ec.dt > 0.0)) throw std::invalid_argument("engine: dt must be positive");
  if (ec.dt > ec.t_final + 1e-12) throw std::invalid_argument("engine: dt must not exceed t_final");
  if (ec.epsilon <= 0.0) throw std::invalid_argument("engine: epsilon must be positive");
  const long long n = std::llround(ec.t_final / ec.dt);
  if (n < 1 || std::abs(static_cast<double>(n) * ec.dt - ec.t_final) > 1e-6 * ec.dt) {
    throw std::invalid_argument("engine: t_final must be an integer multiple of dt");
  }
  return n;
}

inline void check_register(const HamiltonianSum& h, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != h.num_qubits()) {
    throw std::invalid_argument("engine: initial bits must cover every qubit");
  }
}

// Growth callback: appends gates to the circuit based on the current
// variational point, returning how many parameters were added (0 = no growth
// available). `point` holds theta + best shift found so far.
using GrowFn = std::function<int(AnsatzCircuit&, const std::vector<double>& point,
                                 StepRecord& record)>;

struct StepResult {
  AdamResult opt;
  bool budget_exhausted = false;
};

// Optimize the parameter shift for one time step, growing the circuit and
// re-optimizing while the threshold is missed and the layer budget allows.
inline StepResult optimize_step(AnsatzCircuit& circ, std::vector<double>& theta,
                                std::vector<double>& warm, const StateVector& target,
                                const EngineConfig& ec, const OptimizerConfig& oc,
                                const GrowFn& grow, int layers_already_added,
                                StepRecord& record) {
  const double gradient_scale = oc.scaled_cost ? 1.0 / (ec.dt * ec.dt) : 1.0;
  auto cost_and_grad = [&](const std::vector<double>& shift) {
    std::vector<double> full(theta);
    for (std::size_t k = 0; k < full.size(); ++k) full[k] += shift[k];
    return std::pair{overlap_cost(circ, full, target, ec.dt, oc.scaled_cost),
                     infidelity_gradient(circ, full, target)};
  };

  int layers = layers_already_added;
  StepResult result;
  while (true) {
    result.opt = adam_minimize(cost_and_grad, warm, oc, gradient_scale);
    record.optimizer_iterations += result.opt.iterations;
    const double cost = threshold_value(result.opt.best_cost.infidelity, ec.dt, ec.threshold_mode);
    if (cost <= ec.epsilon) return result;
    if (layers >= ec.max_adaptive_layers_per_step) {
      result.budget_exhausted = true;
      return result;
    }
    warm = result.opt.best_params;
    std::vector<double> point(theta);
    for (std::size_t k = 0; k < point.size(); ++k) point[k] += warm[k];
    const int added = grow(circ, point, record);
    if (added == 0) return result;  // fixed ansatz: accept the best shift found
    theta.resize(theta.size() + static_cast<std::size_t>(added), 0.0);
    warm.resize(warm.size() + static_cast<std::size_t>(added), 0.0);
    ++layers;
  }
}

inline void fill_record(StepRecord& rec, const AnsatzCircuit& circ,
                        const std::vector<double>& theta, const CostEvaluation& cost,
                        bool budget_exhausted, const EngineConfig& ec,
                        const std::vector<Observable>& observables) {
  rec.cost = cost.infidelity;
  rec.scaled_cost = cost.infidelity / (ec.dt * ec.dt);
  rec.converged =
      threshold_value(cost.infidelity, ec.dt, ec.threshold_mode) <= ec.epsilon;
  rec.layer_budget_exhausted = budget_exhausted;
  rec.params = theta;
  rec.n_gates = static_cast<int>(circ.gates().size());
  rec.cnots = cnot_count(circ);
  rec.circuit_depth = depth(circ);
  rec.state = circ.prepare(theta);
  rec.observable_values.clear();
  for (const auto& obs : observables) {
    rec.observable_values.push_back(expectation_value(obs, rec.state));
  }
}

}  // namespace detail

/// The adaptive pVQD loop: per time step, optimize the parameter shift against
/// the one-Trotter-step target; while the converged cost misses the threshold
/// (or the circuit has no parameters yet), grow the circuit by one
/// disjoint-support layer of pool gates and re-optimize.
inline TrajectoryLog evolve_adaptive(const HamiltonianSum& h, const std::vector<int>& initial_bits,
                                     const OperatorPool& pool, const EngineConfig& ec,
                                     const OptimizerConfig& oc,
                                     const std::vector<Observable>& observables = {}) {
  detail::check_register(h, initial_bits);
  if (pool.num_qubits != h.num_qubits()) {
    throw std::invalid_argument("evolve_adaptive: pool qubit count mismatch");
  }
  if (pool.empty()) throw std::invalid_argument("evolve_adaptive: empty pool");
  const long long n_steps = detail::step_count(ec);

  AnsatzCircuit circ(h.num_qubits(), initial_bits);
  std::vector<double> theta;
  std::vector<double> warm;
  TrajectoryLog log;
  log.metadata.emplace_back("method", "adaptive");
  log.metadata.emplace_back("pool", pool_kind_name(pool.kind));

  for (long long step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * ec.dt;
    StateVector target = circ.prepare(theta);
    apply_in_place(trotter_step(h, t, ec.dt, ec.trotter_eval), target);

    StepRecord rec;
    rec.t = static_cast<double>(step + 1) * ec.dt;

    auto grow = [&](AnsatzCircuit& c, const std::vector<double>& point,
                    StepRecord& record) -> int {
      std::vector<PauliString> chosen;
      if (!ec.rescore_within_layer) {
        auto scores = pool_scores_with_target(c, point, target, pool,
                                              ec.trial_gate_insertion, ec.threads);
        chosen = adaptive_layer(c, scores).chosen;
      } else {
        // Re-rank the surviving pool after every selection, with the gates
        // chosen so far already in the trial circuit at angle zero.
        OperatorPool remaining = pool;
        AnsatzCircuit trial = c;
        std::vector<double> trial_point = point;
        while (!remaining.empty()) {
          auto scores = pool_scores_with_target(trial, trial_point, target, remaining,
                                                ec.trial_gate_insertion, ec.threads);
          int best = 0;
          for (std::size_t k = 1; k < scores.size(); ++k) {
            if (scores[k].score > scores[static_cast<std::size_t>(best)].score) {
              best = static_cast<int>(k);
            }
          }
          const PauliString& pick = scores[static_cast<std::size_t>(best)].op;
          chosen.push_back(pick);
          trial = trial.append_gates({pick});
          trial_point.push_back(0.0);
          remaining = remove_overlapping(remaining, pick.support_mask());
        }
      }
      LayerEvent event;
      event.generators = chosen;
      event.depth_before = depth(c);
      c = c.append_gates(chosen);
      event.depth_after = depth(c);
      record.layer_events.push_back(event);
      record.gates_added.insert(record.gates_added.end(), chosen.begin(), chosen.end());
      return static_cast<int>(chosen.size());
    };

    try {
      int layers = 0;
      if (circ.num_parameters() == 0) {
        // Parameter-free circuit: the flowchart mandates an adaptive layer
        // before any optimization can run.
        const int added = grow(circ, theta, rec);
        theta.resize(theta.size() + static_cast<std::size_t>(added), 0.0);
        warm.resize(warm.size() + static_cast<std::size_t>(added), 0.0);
        ++layers;
      }
      auto res = detail::optimize_step(circ, theta, warm, target, ec, oc, grow, layers, rec);
      for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += res.opt.best_params[k];
      warm = res.opt.best_params;
      detail::fill_record(rec, circ, theta, res.opt.best_cost, res.budget_exhausted, ec,
                          observables);
      log.records.push_back(std::move(rec));
    } catch (const std::runtime_error& err) {
      log.aborted = true;
      log.abort_reason = "step " + std::to_string(step + 1) + ": " + err.what();
      break;
    }
  }
  log.final_circuit = circ;
  return log;
}

namespace detail {

// The model's Trotter-step gate layout; angles are discarded, only the
// generator sequence matters for variational ansaetze.
inline std::vector<PauliString> trotter_layout(const HamiltonianSum& h, double dt) {
  std::vector<PauliString> layout;
  for (const auto& gate : trotter_step(h, 0.0, dt).gates) layout.push_back(gate.generator);
  return layout;
}

inline TrajectoryLog evolve_pvqd_impl(const HamiltonianSum& h, const std::vector<int>& initial_bits,
                                      int initial_blocks, bool extend_on_stall,
                                      const EngineConfig& ec, const OptimizerConfig& oc,
                                      const std::vector<Observable>& observables) {
  check_register(h, initial_bits);
  if (initial_blocks < 1) throw std::invalid_argument("pvqd: need at least one ansatz block");
  const long long n_steps = step_count(ec);
  const std::vector<PauliString> layout = trotter_layout(h, ec.dt);

  AnsatzCircuit circ(h.num_qubits(), initial_bits);
  for (int b = 0; b < initial_blocks; ++b) circ = circ.append_gates(layout);
  std::vector<double> theta(static_cast<std::size_t>(circ.num_parameters()), 0.0);
  std::vector<double> warm(theta.size(), 0.0);

  TrajectoryLog log;
  log.metadata.emplace_back("method", extend_on_stall ? "pvqd_block" : "pvqd_fixed");
  log.metadata.emplace_back("n_trotter_blocks", std::to_string(initial_blocks));

  GrowFn grow = [&](AnsatzCircuit& c, const std::vector<double>&, StepRecord& record) -> int {
    if (!extend_on_stall) return 0;
    c = c.append_gates(layout);
    record.gates_added.insert(record.gates_added.end(), layout.begin(), layout.end());
    return static_cast<int>(layout.size());
  };

  for (long long step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * ec.dt;
    StateVector target = circ.prepare(theta);
    apply_in_place(trotter_step(h, t, ec.dt, ec.trotter_eval), target);

    StepRecord rec;
    rec.t = static_cast<double>(step + 1) * ec.dt;
    try {
      auto res = optimize_step(circ, theta, warm, target, ec, oc, grow, 0, rec);
      for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += res.opt.best_params[k];
      warm = res.opt.best_params;
      fill_record(rec, circ, theta, res.opt.best_cost, res.budget_exhausted, ec, observables);
      log.records.push_back(std::move(rec));
    } catch (const std::runtime_error& err) {
      log.aborted = true;
      log.abort_reason = "step " + std::to_string(step + 1) + ": " + err.what();
      break;
    }
  }
  log.final_circuit = circ;
  return log;
}

}  // namespace detail

/// Original pVQD: a fixed ansatz made of n_trotter_blocks variational Trotter
/// blocks, all angles starting at zero; the circuit never grows.
inline TrajectoryLog evolve_pvqd_fixed(const HamiltonianSum& h, const std::vector<int>& initial_bits,
                                       int n_trotter_blocks, const EngineConfig& ec,
                                       const OptimizerConfig& oc,
                                       const std::vector<Observable>& observables = {}) {
  return detail::evolve_pvqd_impl(h, initial_bits, n_trotter_blocks, false, ec, oc, observables);
}

/// pVQD with block extensions: starts from one variational Trotter block and
/// appends a whole block (parameters zero) whenever a step fails to converge,
/// up to the per-step layer budget.
inline TrajectoryLog evolve_pvqd_block_extension(const HamiltonianSum& h,
                                                 const std::vector<int>& initial_bits,
                                                 const EngineConfig& ec, const OptimizerConfig& oc,
                                                 const std::vector<Observable>& observables = {}) {
  return detail::evolve_pvqd_impl(h, initial_bits, 1, true, ec, oc, observables);
}

enum class TrotterMode { fixed_steps, fixed_dt };

/// Plain Trotter evolution, no optimization. fixed_steps splits t_final into
/// n_trotter_steps intervals; fixed_dt uses the engine step size. Records
/// carry the cumulative circuit resources.
inline TrajectoryLog evolve_trotter(const HamiltonianSum& h, const std::vector<int>& initial_bits,
                                    TrotterMode mode, int n_trotter_steps, const EngineConfig& ec,
                                    const std::vector<Observable>& observables = {}) {
  detail::check_register(h, initial_bits);
  long long n_steps = 0;
  double dt = 0.0;
  if (mode == TrotterMode::fixed_steps) {
    if (n_trotter_steps < 1) throw std::invalid_argument("evolve_trotter: need at least one step");
    n_steps = n_trotter_steps;
    dt = ec.t_final / static_cast<double>(n_trotter_steps);
  } else {
    n_steps = detail::step_count(ec);
    dt = ec.dt;
  }

  AnsatzCircuit circ(h.num_qubits(), initial_bits);
  std::vector<double> angles;
  StateVector state = basis_state(initial_bits);

  TrajectoryLog log;
  log.metadata.emplace_back("method", mode == TrotterMode::fixed_steps ? "trotter_fixed_steps"
                                                                       : "trotter_fixed_dt");

  for (long long step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    const TrotterStepCircuit ts = trotter_step(h, t, dt, ec.trotter_eval);
    apply_in_place(ts, state);
    std::vector<PauliString> generators;
    for (const auto& gate : ts.gates) {
      generators.push_back(gate.generator);
      angles.push_back(gate.angle);
    }
    circ = circ.append_gates(generators);

    StepRecord rec;
    rec.t = static_cast<double>(step + 1) * dt;
    rec.cost = 0.0;
    rec.scaled_cost = 0.0;
    rec.converged = true;
    rec.optimizer_iterations = 0;
    rec.n_gates = static_cast<int>(circ.gates().size());
    rec.params = angles;
    rec.cnots = cnot_count(circ);
    rec.circuit_depth = depth(circ);
    rec.state = state;
    for (const auto& obs : observables) {
      rec.observable_values.push_back(expectation_value(obs, state));
    }
    log.records.push_back(std::move(rec));
  }
  log.final_circuit = circ;
  return log;
}

}  // namespace vqdyn
