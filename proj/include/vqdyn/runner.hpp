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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vqdyn/ansatz.hpp"
#include "vqdyn/config.hpp"
#include "vqdyn/engine.hpp"
#include "vqdyn/exact.hpp"

namespace vqdyn {

struct RunResult {
  TrajectoryLog log;
  double grid_dt = 0.0;  // record spacing actually used
  bool oracle_ran = false;
  std::vector<double> exact_infidelity_series;  // on [0, dt, ..., t_final]
  double integrated_infidelity = 0.0;
  double final_infidelity = 0.0;
  int oracle_substeps = 0;
  double wall_seconds = 0.0;
};

/// Dispatches the configured method on the configured model.
inline TrajectoryLog execute(const RunConfig& cfg) {
  const HamiltonianSum h = build_model(cfg.model);
  const std::vector<int> bits = initial_bits(cfg.model);
  TrajectoryLog log;
  switch (cfg.method.kind) {
    case MethodKind::adaptive:
      log = evolve_adaptive(h, bits, build_pool(cfg.method, h.num_qubits()), cfg.engine,
                            cfg.optimizer, cfg.observables);
      break;
    case MethodKind::pvqd_fixed:
      log = evolve_pvqd_fixed(h, bits, cfg.method.n_trotter_steps, cfg.engine, cfg.optimizer,
                              cfg.observables);
      break;
    case MethodKind::pvqd_block:
      log = evolve_pvqd_block_extension(h, bits, cfg.engine, cfg.optimizer, cfg.observables);
      break;
    case MethodKind::trotter_fixed_steps:
      log = evolve_trotter(h, bits, TrotterMode::fixed_steps, cfg.method.n_trotter_steps,
                           cfg.engine, cfg.observables);
      break;
    case MethodKind::trotter_fixed_dt:
      log = evolve_trotter(h, bits, TrotterMode::fixed_dt, 0, cfg.engine, cfg.observables);
      break;
  }
  log.metadata.emplace_back("model", model_kind_name(cfg.model.kind));
  log.metadata.emplace_back("num_qubits", std::to_string(h.num_qubits()));
  log.metadata.emplace_back("seed", std::to_string(cfg.seed));
  return log;
}

/// Runs the experiment and, when enabled and within the cap, the exact oracle
/// alongside it.
inline RunResult run_with_oracle(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.log = execute(cfg);
  result.grid_dt = result.log.records.empty()
                       ? cfg.engine.dt
                       : result.log.records.front().t;

  const int n = model_num_qubits(cfg.model);
  if (cfg.oracle.enabled && !result.log.aborted && !result.log.records.empty()) {
    if (n > cfg.oracle.max_qubits) {
      std::cerr << "warning: oracle disabled, " << n << " qubits exceed the cap of "
                << cfg.oracle.max_qubits << "; no exact metrics will be reported\n";
    } else {
      const HamiltonianSum h = build_model(cfg.model);
      const StateVector psi0 = basis_state(initial_bits(cfg.model));
      std::vector<double> grid = {0.0};
      std::vector<StateVector> states = {psi0};
      for (const auto& rec : result.log.records) {
        grid.push_back(rec.t);
        states.push_back(rec.state);
      }
      const ExactTrajectory exact = exact_evolve(h, psi0, grid, cfg.oracle.tolerance);
      result.exact_infidelity_series = exact_infidelity(exact, states);
      result.integrated_infidelity =
          integrated_exact_infidelity(result.exact_infidelity_series, result.grid_dt);
      result.final_infidelity = result.exact_infidelity_series.back();
      result.oracle_substeps = exact.substeps_per_interval;
      result.oracle_ran = true;
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace io_detail {

inline std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace io_detail

/// trajectory.csv: one row per accepted step, 17-significant-digit floats,
/// '.' decimal separator, LF line endings.
inline std::string trajectory_csv(const RunConfig& cfg, const TrajectoryLog& log) {
  std::string out = "t,cost,converged,n_params,cnot_count,depth";
  for (const auto& obs : cfg.observables) out += "," + obs.label;
  out += '\n';
  for (const auto& rec : log.records) {
    out += io_detail::fmt(rec.t);
    out += ',';
    out += io_detail::fmt(rec.cost);
    out += ',';
    out += rec.converged ? '1' : '0';
    out += ',';
    out += std::to_string(rec.params.size());
    out += ',';
    out += std::to_string(rec.cnots);
    out += ',';
    out += std::to_string(rec.circuit_depth);
    for (double value : rec.observable_values) {
      out += ',';
      out += io_detail::fmt(value);
    }
    out += '\n';
  }
  return out;
}

inline std::string summary_text(const RunConfig& cfg, const RunResult& result) {
  const TrajectoryLog& log = result.log;
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  kv("schema_version", std::to_string(cfg.schema_version));
  kv("model", model_kind_name(cfg.model.kind));
  kv("num_qubits", std::to_string(model_num_qubits(cfg.model)));
  kv("method", method_kind_name(cfg.method.kind));
  if (cfg.method.kind == MethodKind::adaptive) kv("pool", pool_kind_name(cfg.method.pool));
  kv("dt", io_detail::fmt(result.grid_dt));
  kv("t_final", io_detail::fmt(cfg.engine.t_final));
  kv("epsilon", io_detail::fmt(cfg.engine.epsilon));
  kv("threshold_mode",
     cfg.engine.threshold_mode == ThresholdMode::scaled ? "scaled" : "raw");
  kv("n_steps", std::to_string(log.records.size()));
  kv("aborted", log.aborted ? "1" : "0");
  if (log.aborted) kv("abort_reason", log.abort_reason);
  if (!log.records.empty()) {
    const auto& last = log.records.back();
    kv("final_cost", io_detail::fmt(last.cost));
    kv("final_n_params", std::to_string(last.params.size()));
    kv("final_cnot_count", std::to_string(last.cnots));
    kv("final_depth", std::to_string(last.circuit_depth));
    long long iterations = 0;
    long long gates_added = 0;
    int unconverged = 0;
    for (const auto& rec : log.records) {
      iterations += rec.optimizer_iterations;
      gates_added += static_cast<long long>(rec.gates_added.size());
      unconverged += rec.converged ? 0 : 1;
    }
    kv("total_optimizer_iterations", std::to_string(iterations));
    kv("total_gates_added", std::to_string(gates_added));
    kv("unconverged_steps", std::to_string(unconverged));
  }
  if (result.oracle_ran) {
    kv("integrated_exact_infidelity", io_detail::fmt(result.integrated_infidelity));
    kv("final_exact_infidelity", io_detail::fmt(result.final_infidelity));
    kv("oracle_substeps_per_interval", std::to_string(result.oracle_substeps));
  }
  kv("wall_time_seconds", io_detail::fmt(result.wall_seconds));
  return out;
}

/// Writes trajectory.csv, per-step circuit files and summary.txt into out_dir.
inline void write_artifacts(const RunConfig& cfg, const RunResult& result,
                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  io_detail::write_file(out_dir / "trajectory.csv", trajectory_csv(cfg, result.log));
  for (std::size_t k = 0; k < result.log.records.size(); ++k) {
    const auto& rec = result.log.records[k];
    const AnsatzCircuit circ = result.log.final_circuit.prefix(rec.n_gates);
    io_detail::write_file(out_dir / ("circuit_step_" + std::to_string(k + 1) + ".txt"),
                          serialize(circ, rec.params));
  }
  io_detail::write_file(out_dir / "summary.txt", summary_text(cfg, result));
}

/// Full experiment: execute, compute oracle metrics, persist artifacts.
inline RunResult run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const RunResult result = run_with_oracle(cfg);
  write_artifacts(cfg, result, out_dir);
  if (result.log.aborted) {
    throw std::runtime_error("run aborted: " + result.log.abort_reason);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Comparison of finished runs.

struct LoadedRun {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // cells as written
  std::map<std::string, std::string> summary;
};

inline LoadedRun load_run(const std::filesystem::path& dir) {
  LoadedRun run;
  run.name = dir.filename().string();
  if (run.name.empty()) run.name = dir.parent_path().filename().string();

  std::ifstream csv(dir / "trajectory.csv");
  if (!csv) throw std::runtime_error("cannot read " + (dir / "trajectory.csv").string());
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("empty trajectory in " + dir.string());
  run.header = io_detail::split(line, ',');
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    auto cells = io_detail::split(line, ',');
    if (cells.size() != run.header.size()) {
      throw std::runtime_error("ragged trajectory row in " + dir.string());
    }
    run.rows.push_back(std::move(cells));
  }

  std::ifstream summary(dir / "summary.txt");
  if (summary) {
    while (std::getline(summary, line)) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) {
        run.summary[line.substr(0, eq)] = line.substr(eq + 3);
      }
    }
  }
  return run;
}

inline int column_index(const LoadedRun& run, const std::string& name) {
  for (std::size_t k = 0; k < run.header.size(); ++k) {
    if (run.header[k] == name) return static_cast<int>(k);
  }
  throw std::runtime_error("column '" + name + "' missing in run " + run.name);
}

/// Wide per-time CSV over runs sharing model and grid: t plus
/// cost_<run>, cnot_<run>, depth_<run> columns per run directory.
inline std::string compare_csv(const std::vector<LoadedRun>& runs) {
  if (runs.empty()) throw std::runtime_error("compare: no runs given");
  const LoadedRun& first = runs.front();
  const int t_col = column_index(first, "t");
  for (const auto& run : runs) {
    if (run.rows.size() != first.rows.size()) {
      throw std::runtime_error("compare: grid mismatch between runs '" + first.name + "' and '" +
                               run.name + "'");
    }
    const int col = column_index(run, "t");
    for (std::size_t r = 0; r < run.rows.size(); ++r) {
      if (run.rows[r][static_cast<std::size_t>(col)] !=
          first.rows[r][static_cast<std::size_t>(t_col)]) {
        throw std::runtime_error("compare: grid mismatch between runs '" + first.name + "' and '" +
                                 run.name + "'");
      }
    }
  }

  std::string out = "t";
  for (const auto& run : runs) {
    out += ",cost_" + run.name + ",cnot_" + run.name + ",depth_" + run.name;
  }
  out += '\n';
  for (std::size_t r = 0; r < first.rows.size(); ++r) {
    out += first.rows[r][static_cast<std::size_t>(t_col)];
    for (const auto& run : runs) {
      out += ',' + run.rows[r][static_cast<std::size_t>(column_index(run, "cost"))];
      out += ',' + run.rows[r][static_cast<std::size_t>(column_index(run, "cnot_count"))];
      out += ',' + run.rows[r][static_cast<std::size_t>(column_index(run, "depth"))];
    }
    out += '\n';
  }
  return out;
}

/// One row per run: size, integrated exact infidelity and final resources,
/// the raw material of a size-sweep table.
inline std::string runs_table_csv(const std::vector<LoadedRun>& runs) {
  std::string out = "run,model,method,num_qubits,integrated_exact_infidelity,final_depth,final_cnot_count\n";
  auto field = [](const LoadedRun& run, const std::string& key) {
    const auto it = run.summary.find(key);
    return it == run.summary.end() ? std::string("") : it->second;
  };
  for (const auto& run : runs) {
    out += run.name + ',' + field(run, "model") + ',' + field(run, "method") + ',' +
           field(run, "num_qubits") + ',' + field(run, "integrated_exact_infidelity") + ',' +
           field(run, "final_depth") + ',' + field(run, "final_cnot_count") + '\n';
  }
  return out;
}

/// Writes compare.csv and runs_table.csv for the given run directories.
inline void write_compare(const std::vector<std::filesystem::path>& dirs,
                          const std::filesystem::path& out_dir) {
  std::vector<LoadedRun> runs;
  for (const auto& dir : dirs) runs.push_back(load_run(dir));
  std::filesystem::create_directories(out_dir);
  io_detail::write_file(out_dir / "compare.csv", compare_csv(runs));
  io_detail::write_file(out_dir / "runs_table.csv", runs_table_csv(runs));
}

// ---------------------------------------------------------------------------
// Resource reports for circuit files.

struct ResourceReport {
  int num_qubits = 0;
  int n_gates = 0;
  long long cnots = 0;
  int circuit_depth = 0;
  std::vector<long long> weight_counts;  // index = Pauli weight
};

inline ResourceReport count_resources(const std::filesystem::path& circuit_file) {
  std::ifstream in(circuit_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + circuit_file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto [circ, params] = deserialize(buf.str());
  ResourceReport report;
  report.num_qubits = circ.num_qubits();
  report.n_gates = static_cast<int>(circ.gates().size());
  report.cnots = cnot_count(circ);
  report.circuit_depth = depth(circ);
  report.weight_counts = weight_histogram(circ);
  return report;
}

inline std::string resource_report_text(const std::filesystem::path& file,
                                        const ResourceReport& report) {
  std::string out;
  out += "file = " + file.string() + "\n";
  out += "num_qubits = " + std::to_string(report.num_qubits) + "\n";
  out += "gates = " + std::to_string(report.n_gates) + "\n";
  out += "cnot_count = " + std::to_string(report.cnots) + "\n";
  out += "depth = " + std::to_string(report.circuit_depth) + "\n";
  for (std::size_t w = 1; w < report.weight_counts.size(); ++w) {
    if (report.weight_counts[w] > 0) {
      out += "weight_" + std::to_string(w) + "_gates = " +
             std::to_string(report.weight_counts[w]) + "\n";
    }
  }
  return out;
}

}  // namespace vqdyn
