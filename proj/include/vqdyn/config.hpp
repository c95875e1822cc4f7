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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqdyn/engine.hpp"
#include "vqdyn/hamiltonian.hpp"
#include "vqdyn/models.hpp"
#include "vqdyn/pools.hpp"

namespace vqdyn {

/// Raised for unreadable, unparsable or semantically invalid run configs.
/// Parse errors carry the line/column reported by the JSON parser; semantic
/// errors carry the offending key path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelKind { driven_xyz, hubbard };
enum class MethodKind { adaptive, pvqd_fixed, pvqd_block, trotter_fixed_steps, trotter_fixed_dt };

inline const char* model_kind_name(ModelKind kind) {
  return kind == ModelKind::driven_xyz ? "driven_xyz" : "hubbard";
}

inline const char* method_kind_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::adaptive: return "adaptive";
    case MethodKind::pvqd_fixed: return "pvqd_fixed";
    case MethodKind::pvqd_block: return "pvqd_block";
    case MethodKind::trotter_fixed_steps: return "trotter_fixed_steps";
    case MethodKind::trotter_fixed_dt: return "trotter_fixed_dt";
  }
  return "?";
}

struct ModelConfig {
  ModelKind kind = ModelKind::driven_xyz;
  // driven_xyz
  int length = 8;
  double jx = 1.0;
  double jy = 0.8;
  double jz = 0.6;
  double omega = 2.0;
  // hubbard
  int lx = 2;
  int ly = 2;
  double hopping = 1.0;
  double interaction = 0.8;
  // "alternating01", "hubbard_half_filling", or an explicit bitstring.
  std::string initial_state;
};

struct MethodConfig {
  MethodKind kind = MethodKind::adaptive;
  PoolKind pool = PoolKind::local;
  std::vector<std::string> custom_operators;
  int n_trotter_steps = 3;  // ansatz blocks for pVQD, step count for fixed-steps Trotter
};

struct OracleConfig {
  bool enabled = true;
  double tolerance = 1e-7;
  int max_qubits = 12;
};

struct RunConfig {
  int schema_version = 1;
  ModelConfig model;
  MethodConfig method;
  EngineConfig engine;
  OptimizerConfig optimizer;
  std::vector<Observable> observables;
  OracleConfig oracle;
  std::string output_dir = "run";
  long long seed = 0;  // reserved for future stochastic features
  int threads = 1;
};

inline int model_num_qubits(const ModelConfig& model) {
  return model.kind == ModelKind::driven_xyz ? model.length : 2 * model.lx * model.ly;
}

inline HamiltonianSum build_model(const ModelConfig& model) {
  if (model.kind == ModelKind::driven_xyz) {
    return build_driven_xyz(model.length, model.jx, model.jy, model.jz, model.omega);
  }
  return build_hubbard_jw({model.lx, model.ly}, model.hopping, model.interaction);
}

inline std::vector<int> initial_bits(const ModelConfig& model) {
  const int n = model_num_qubits(model);
  std::string pattern = model.initial_state;
  if (pattern.empty()) {
    pattern = model.kind == ModelKind::driven_xyz ? "alternating01" : "hubbard_half_filling";
  }
  if (pattern == "alternating01") return antiferro_bits(n, InitialPattern::alternating01);
  if (pattern == "hubbard_half_filling") {
    return antiferro_bits(n, InitialPattern::hubbard_half_filling);
  }
  if (static_cast<int>(pattern.size()) != n) {
    throw ConfigError("model.initial_state: bitstring length must equal the qubit count");
  }
  std::vector<int> bits;
  for (char c : pattern) {
    if (c != '0' && c != '1') {
      throw ConfigError("model.initial_state: expected a named pattern or a 0/1 string");
    }
    bits.push_back(c - '0');
  }
  return bits;
}

inline OperatorPool build_pool(const MethodConfig& method, int num_qubits) {
  switch (method.pool) {
    case PoolKind::local: return local_pool(num_qubits);
    case PoolKind::non_local: return non_local_pool(num_qubits);
    case PoolKind::custom: return custom_pool(num_qubits, method.custom_operators);
  }
  throw ConfigError("method.pool: unknown pool kind");
}

namespace cfg_detail {

using json = nlohmann::json;

inline void expect_keys(const json& obj, const std::string& path,
                        const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("config: unknown key '" + (path.empty() ? "" : path + ".") + item.key() +
                        "'");
    }
  }
}

inline const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

template <typename T>
T get_or(const json& obj, const std::string& path, const std::string& key, T fallback) {
  const json* node = find(obj, key);
  if (!node) return fallback;
  try {
    return node->get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + path + "." + key + "'");
  }
}

inline std::string get_required_string(const json& obj, const std::string& path,
                                       const std::string& key) {
  const json* node = find(obj, key);
  if (!node || !node->is_string()) {
    throw ConfigError("config: missing or non-string key '" + path + "." + key + "'");
  }
  return node->get<std::string>();
}

inline ModelConfig parse_model(const json& obj) {
  ModelConfig model;
  expect_keys(obj, "model",
              {"kind", "length", "jx", "jy", "jz", "omega", "lx", "ly", "hopping", "interaction",
               "initial_state"});
  const std::string kind = get_required_string(obj, "model", "kind");
  if (kind == "driven_xyz") {
    model.kind = ModelKind::driven_xyz;
  } else if (kind == "hubbard") {
    model.kind = ModelKind::hubbard;
  } else {
    throw ConfigError("config: model.kind must be 'driven_xyz' or 'hubbard'");
  }
  model.length = get_or(obj, "model", "length", model.length);
  model.jx = get_or(obj, "model", "jx", model.jx);
  model.jy = get_or(obj, "model", "jy", model.jy);
  model.jz = get_or(obj, "model", "jz", model.jz);
  model.omega = get_or(obj, "model", "omega", model.omega);
  model.lx = get_or(obj, "model", "lx", model.lx);
  model.ly = get_or(obj, "model", "ly", model.ly);
  model.hopping = get_or(obj, "model", "hopping", model.hopping);
  model.interaction = get_or(obj, "model", "interaction", model.interaction);
  model.initial_state = get_or<std::string>(obj, "model", "initial_state", "");
  if (model.kind == ModelKind::driven_xyz && model.length < 2) {
    throw ConfigError("config: model.length must be at least 2");
  }
  if (model.kind == ModelKind::hubbard && (model.lx < 1 || model.ly < 1 || model.lx * model.ly < 2)) {
    throw ConfigError("config: model.lx/ly describe a degenerate lattice");
  }
  return model;
}

inline MethodConfig parse_method(const json& obj) {
  MethodConfig method;
  expect_keys(obj, "method", {"kind", "pool", "custom_operators", "n_trotter_steps"});
  const std::string kind = get_required_string(obj, "method", "kind");
  if (kind == "adaptive") {
    method.kind = MethodKind::adaptive;
  } else if (kind == "pvqd_fixed") {
    method.kind = MethodKind::pvqd_fixed;
  } else if (kind == "pvqd_block") {
    method.kind = MethodKind::pvqd_block;
  } else if (kind == "trotter_fixed_steps") {
    method.kind = MethodKind::trotter_fixed_steps;
  } else if (kind == "trotter_fixed_dt") {
    method.kind = MethodKind::trotter_fixed_dt;
  } else {
    throw ConfigError(
        "config: method.kind must be one of adaptive, pvqd_fixed, pvqd_block, "
        "trotter_fixed_steps, trotter_fixed_dt");
  }
  const std::string pool = get_or<std::string>(obj, "method", "pool", "local");
  if (pool == "local") {
    method.pool = PoolKind::local;
  } else if (pool == "non_local") {
    method.pool = PoolKind::non_local;
  } else if (pool == "custom") {
    method.pool = PoolKind::custom;
  } else {
    throw ConfigError("config: method.pool must be local, non_local or custom");
  }
  method.custom_operators =
      get_or<std::vector<std::string>>(obj, "method", "custom_operators", {});
  if (method.pool == PoolKind::custom && method.custom_operators.empty()) {
    throw ConfigError("config: method.custom_operators required for a custom pool");
  }
  method.n_trotter_steps = get_or(obj, "method", "n_trotter_steps", method.n_trotter_steps);
  if (method.n_trotter_steps < 1) {
    throw ConfigError("config: method.n_trotter_steps must be at least 1");
  }
  return method;
}

inline EngineConfig parse_engine(const json& obj) {
  EngineConfig engine;
  expect_keys(obj, "engine",
              {"dt", "t_final", "epsilon", "threshold_mode", "max_adaptive_layers_per_step",
               "trial_gate_insertion", "rescore_within_layer", "trotter_coefficient_eval"});
  engine.dt = get_or(obj, "engine", "dt", engine.dt);
  engine.t_final = get_or(obj, "engine", "t_final", engine.t_final);
  engine.epsilon = get_or(obj, "engine", "epsilon", engine.epsilon);
  const std::string mode = get_or<std::string>(obj, "engine", "threshold_mode", "scaled");
  if (mode == "scaled") {
    engine.threshold_mode = ThresholdMode::scaled;
  } else if (mode == "raw") {
    engine.threshold_mode = ThresholdMode::raw;
  } else {
    throw ConfigError("config: engine.threshold_mode must be 'scaled' or 'raw'");
  }
  engine.max_adaptive_layers_per_step =
      get_or(obj, "engine", "max_adaptive_layers_per_step", engine.max_adaptive_layers_per_step);
  if (engine.max_adaptive_layers_per_step < 1) {
    throw ConfigError("config: engine.max_adaptive_layers_per_step must be at least 1");
  }
  const std::string insertion =
      get_or<std::string>(obj, "engine", "trial_gate_insertion", "circuit_end");
  if (insertion == "circuit_end") {
    engine.trial_gate_insertion = TrialGateInsertion::circuit_end;
  } else if (insertion == "adjacent_initial") {
    engine.trial_gate_insertion = TrialGateInsertion::adjacent_initial;
  } else {
    throw ConfigError("config: engine.trial_gate_insertion must be 'circuit_end' or 'adjacent_initial'");
  }
  engine.rescore_within_layer =
      get_or(obj, "engine", "rescore_within_layer", engine.rescore_within_layer);
  const std::string eval =
      get_or<std::string>(obj, "engine", "trotter_coefficient_eval", "midpoint");
  if (eval == "midpoint") {
    engine.trotter_eval = CoefficientEval::midpoint;
  } else if (eval == "left") {
    engine.trotter_eval = CoefficientEval::left;
  } else {
    throw ConfigError("config: engine.trotter_coefficient_eval must be 'midpoint' or 'left'");
  }
  return engine;
}

inline OptimizerConfig parse_optimizer(const json& obj) {
  OptimizerConfig opt;
  expect_keys(obj, "optimizer",
              {"learning_rate", "beta1", "beta2", "eps_adam", "grad_tolerance", "max_iterations",
               "scaled_cost"});
  opt.learning_rate = get_or(obj, "optimizer", "learning_rate", opt.learning_rate);
  opt.beta1 = get_or(obj, "optimizer", "beta1", opt.beta1);
  opt.beta2 = get_or(obj, "optimizer", "beta2", opt.beta2);
  opt.eps_adam = get_or(obj, "optimizer", "eps_adam", opt.eps_adam);
  opt.grad_tolerance = get_or(obj, "optimizer", "grad_tolerance", opt.grad_tolerance);
  opt.max_iterations = get_or(obj, "optimizer", "max_iterations", opt.max_iterations);
  opt.scaled_cost = get_or(obj, "optimizer", "scaled_cost", opt.scaled_cost);
  if (opt.learning_rate <= 0.0) throw ConfigError("config: optimizer.learning_rate must be positive");
  if (opt.max_iterations < 1) throw ConfigError("config: optimizer.max_iterations must be at least 1");
  return opt;
}

inline std::vector<Observable> parse_observables(const json& arr, int num_qubits) {
  std::vector<Observable> observables;
  std::set<std::string> labels;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = "observables[" + std::to_string(k) + "]";
    const json& entry = arr[k];
    if (!entry.is_object()) throw ConfigError("config: " + path + " must be an object");
    expect_keys(entry, path, {"label", "terms"});
    Observable obs;
    obs.label = get_required_string(entry, path, "label");
    if (obs.label.empty() || obs.label.find_first_of(",\n\r ") != std::string::npos) {
      throw ConfigError("config: " + path + ".label must be non-empty without spaces or commas");
    }
    if (!labels.insert(obs.label).second) {
      throw ConfigError("config: duplicate observable label '" + obs.label + "'");
    }
    const json* terms = find(entry, "terms");
    if (!terms || !terms->is_array() || terms->empty()) {
      throw ConfigError("config: " + path + ".terms must be a non-empty array");
    }
    for (const json& term : *terms) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_number() || !term[1].is_string()) {
        throw ConfigError("config: " + path + ".terms entries must be [coefficient, letters]");
      }
      PauliString op = [&] {
        try {
          return PauliString::parse(term[1].get<std::string>());
        } catch (const std::invalid_argument& err) {
          throw ConfigError("config: " + path + ": " + err.what());
        }
      }();
      if (op.num_qubits() != num_qubits) {
        throw ConfigError("config: " + path + ": operator qubit count must be " +
                          std::to_string(num_qubits));
      }
      obs.terms.emplace_back(term[0].get<double>(), std::move(op));
    }
    observables.push_back(std::move(obs));
  }
  return observables;
}

}  // namespace cfg_detail

/// Parses and validates a JSON run config. `origin` names the source in error
/// messages (typically the file path).
inline RunConfig parse_config(const std::string& text, const std::string& origin) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(origin + ": " + err.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be a JSON object");

  try {
    cfg_detail::expect_keys(root, "",
                            {"schema_version", "model", "method", "engine", "optimizer",
                             "observables", "oracle", "output_dir", "seed", "threads"});

    RunConfig cfg;
    cfg.schema_version = cfg_detail::get_or(root, "", "schema_version", 0);
    if (cfg.schema_version != 1) {
      throw ConfigError("config: schema_version must be 1");
    }
    const nlohmann::json* model = cfg_detail::find(root, "model");
    if (!model || !model->is_object()) throw ConfigError("config: missing 'model' section");
    cfg.model = cfg_detail::parse_model(*model);

    const nlohmann::json* method = cfg_detail::find(root, "method");
    if (!method || !method->is_object()) throw ConfigError("config: missing 'method' section");
    cfg.method = cfg_detail::parse_method(*method);

    if (const auto* engine = cfg_detail::find(root, "engine")) {
      if (!engine->is_object()) throw ConfigError("config: 'engine' must be an object");
      cfg.engine = cfg_detail::parse_engine(*engine);
    }
    if (const auto* optimizer = cfg_detail::find(root, "optimizer")) {
      if (!optimizer->is_object()) throw ConfigError("config: 'optimizer' must be an object");
      cfg.optimizer = cfg_detail::parse_optimizer(*optimizer);
    }
    if (const auto* observables = cfg_detail::find(root, "observables")) {
      if (!observables->is_array()) throw ConfigError("config: 'observables' must be an array");
      cfg.observables = cfg_detail::parse_observables(*observables, model_num_qubits(cfg.model));
    }
    if (const auto* oracle = cfg_detail::find(root, "oracle")) {
      if (!oracle->is_object()) throw ConfigError("config: 'oracle' must be an object");
      cfg_detail::expect_keys(*oracle, "oracle", {"enabled", "tolerance", "max_qubits"});
      cfg.oracle.enabled = cfg_detail::get_or(*oracle, "oracle", "enabled", cfg.oracle.enabled);
      cfg.oracle.tolerance =
          cfg_detail::get_or(*oracle, "oracle", "tolerance", cfg.oracle.tolerance);
      cfg.oracle.max_qubits =
          cfg_detail::get_or(*oracle, "oracle", "max_qubits", cfg.oracle.max_qubits);
      if (cfg.oracle.tolerance <= 0.0) {
        throw ConfigError("config: oracle.tolerance must be positive");
      }
    }
    cfg.output_dir = cfg_detail::get_or<std::string>(root, "", "output_dir", cfg.output_dir);
    cfg.seed = cfg_detail::get_or<long long>(root, "", "seed", cfg.seed);
    cfg.threads = cfg_detail::get_or(root, "", "threads", cfg.threads);
    if (cfg.threads < 1) throw ConfigError("config: threads must be at least 1");
    cfg.engine.threads = cfg.threads;

    // Cross-checks that need the full model in hand.
    (void)initial_bits(cfg.model);
    if (cfg.method.kind == MethodKind::adaptive) {
      (void)build_pool(cfg.method, model_num_qubits(cfg.model));
    }
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw ConfigError(origin + ": " + err.what());
  }
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace vqdyn
