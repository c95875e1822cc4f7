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

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vqdyn/models.hpp"
#include "vqdyn/pauli.hpp"
#include "vqdyn/state.hpp"

namespace vqdyn {

struct AnsatzGate {
  PauliString generator;
  int parameter_index = 0;
};

/// Parameterized circuit: basis-state preparation followed by an ordered
/// sequence of Pauli rotations e^{-i theta_k A_k}. Gates earlier in the
/// sequence act on the state first. Growth returns new values; circuits are
/// immutable and safe to share read-only.
class AnsatzCircuit {
 public:
  AnsatzCircuit() = default;

  AnsatzCircuit(int num_qubits, std::vector<int> initial_bits)
      : num_qubits_(num_qubits), initial_bits_(std::move(initial_bits)) {
    if (num_qubits < 1) throw std::invalid_argument("AnsatzCircuit: need at least one qubit");
    if (static_cast<int>(initial_bits_.size()) != num_qubits) {
      throw std::invalid_argument("AnsatzCircuit: initial bits must cover every qubit");
    }
    for (int b : initial_bits_) {
      if (b != 0 && b != 1) throw std::invalid_argument("AnsatzCircuit: bits must be 0 or 1");
    }
  }

  int num_qubits() const { return num_qubits_; }
  int num_parameters() const { return num_parameters_; }
  const std::vector<AnsatzGate>& gates() const { return gates_; }
  const std::vector<int>& initial_bits() const { return initial_bits_; }

  /// New circuit with the generators appended at the end of the sequence
  /// (acting last), each with a fresh parameter slot. New parameters are meant
  /// to start at exactly 0 so the prepared state is unchanged.
  AnsatzCircuit append_gates(const std::vector<PauliString>& generators) const {
    if (generators.empty()) throw std::invalid_argument("append_gates: no generators given");
    AnsatzCircuit grown = *this;
    for (const auto& g : generators) {
      if (g.num_qubits() != num_qubits_) {
        throw std::invalid_argument("append_gates: generator qubit count mismatch");
      }
      if (g.is_identity()) {
        throw std::invalid_argument("append_gates: identity generator not allowed");
      }
      grown.gates_.push_back({g, grown.num_parameters_++});
    }
    return grown;
  }

  /// The circuit truncated to its first n gates (and parameters).
  AnsatzCircuit prefix(int n_gates) const {
    if (n_gates < 0 || n_gates > static_cast<int>(gates_.size())) {
      throw std::out_of_range("prefix: gate count out of range");
    }
    AnsatzCircuit head(num_qubits_, initial_bits_);
    head.gates_.assign(gates_.begin(), gates_.begin() + n_gates);
    for (const auto& gate : head.gates_) {
      if (gate.parameter_index >= n_gates) {
        throw std::logic_error("prefix: parameter indices are not sequential");
      }
    }
    head.num_parameters_ = n_gates;
    return head;
  }

  /// |psi(params)> = prod_k e^{-i params[k] A_k} |initial_bits>.
  StateVector prepare(std::span<const double> params) const {
    if (static_cast<int>(params.size()) != num_parameters_) {
      throw std::invalid_argument("prepare: parameter count mismatch");
    }
    StateVector s = basis_state(initial_bits_);
    for (const auto& gate : gates_) {
      apply_pauli_rotation_in_place(gate.generator, params[static_cast<std::size_t>(gate.parameter_index)], s);
    }
    return s;
  }

 private:
  int num_qubits_ = 0;
  std::vector<AnsatzGate> gates_;
  int num_parameters_ = 0;
  std::vector<int> initial_bits_;
};

namespace detail {

// CNOT-ladder decomposition of a weight-w Pauli rotation: 2(w-1) CNOTs around
// a single-qubit rotation; single-qubit rotations are free.
inline long long cnot_cost(const PauliString& generator) {
  const int w = generator.weight();
  return w >= 2 ? 2LL * (w - 1) : 0LL;
}

}  // namespace detail

inline long long cnot_count(const AnsatzCircuit& circ) {
  long long total = 0;
  for (const auto& gate : circ.gates()) total += detail::cnot_cost(gate.generator);
  return total;
}

inline long long cnot_count(const TrotterStepCircuit& step) {
  long long total = 0;
  for (const auto& gate : step.gates) total += detail::cnot_cost(gate.generator);
  return total;
}

/// Greedy layering depth: each gate joins the earliest layer after every
/// earlier gate that shares support with it.
inline int depth(const AnsatzCircuit& circ) {
  std::vector<int> qubit_layer(static_cast<std::size_t>(circ.num_qubits()), 0);
  int max_layer = 0;
  for (const auto& gate : circ.gates()) {
    int layer = 0;
    for (int q : gate.generator.support()) {
      layer = std::max(layer, qubit_layer[static_cast<std::size_t>(q)]);
    }
    ++layer;
    for (int q : gate.generator.support()) qubit_layer[static_cast<std::size_t>(q)] = layer;
    max_layer = std::max(max_layer, layer);
  }
  return max_layer;
}

/// Per-weight histogram of gate counts, index = Pauli weight.
inline std::vector<long long> weight_histogram(const AnsatzCircuit& circ) {
  std::vector<long long> histo(static_cast<std::size_t>(circ.num_qubits()) + 1, 0);
  for (const auto& gate : circ.gates()) {
    ++histo[static_cast<std::size_t>(gate.generator.weight())];
  }
  return histo;
}

namespace detail {

inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace detail

/// Plain-text circuit format, LF line endings:
///   line 1:  N <num_qubits> INIT <bitstring>
///   then one line per gate:  <letters> <angle>
inline std::string serialize(const AnsatzCircuit& circ, std::span<const double> params) {
  if (static_cast<int>(params.size()) != circ.num_parameters()) {
    throw std::invalid_argument("serialize: parameter count mismatch");
  }
  std::string out = "N " + std::to_string(circ.num_qubits()) + " INIT ";
  for (int b : circ.initial_bits()) out += static_cast<char>('0' + b);
  out += '\n';
  for (const auto& gate : circ.gates()) {
    out += gate.generator.str();
    out += ' ';
    out += detail::format_double(params[static_cast<std::size_t>(gate.parameter_index)]);
    out += '\n';
  }
  return out;
}

/// Inverse of serialize. Gate parameters are assigned sequentially in gate
/// order.
inline std::pair<AnsatzCircuit, std::vector<double>> deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("deserialize: empty document");

  std::istringstream header(line);
  std::string tag_n, tag_init, bitstring;
  int num_qubits = 0;
  if (!(header >> tag_n >> num_qubits >> tag_init >> bitstring) || tag_n != "N" ||
      tag_init != "INIT") {
    throw std::invalid_argument("deserialize: malformed header '" + line + "'");
  }
  std::string trailing;
  if (header >> trailing) throw std::invalid_argument("deserialize: trailing header tokens");
  if (num_qubits < 1 || static_cast<int>(bitstring.size()) != num_qubits) {
    throw std::invalid_argument("deserialize: header bitstring length mismatch");
  }
  std::vector<int> bits;
  for (char c : bitstring) {
    if (c != '0' && c != '1') throw std::invalid_argument("deserialize: bad bitstring");
    bits.push_back(c - '0');
  }

  AnsatzCircuit circ(num_qubits, bits);
  std::vector<double> params;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream gate_line(line);
    std::string letters, angle_text;
    if (!(gate_line >> letters >> angle_text)) {
      throw std::invalid_argument("deserialize: malformed gate at line " + std::to_string(line_no));
    }
    if (gate_line >> trailing) {
      throw std::invalid_argument("deserialize: trailing tokens at line " + std::to_string(line_no));
    }
    double angle = 0.0;
    const char* begin = angle_text.data();
    const char* end = begin + angle_text.size();
    auto [ptr, ec] = std::from_chars(begin, end, angle);
    if (ec != std::errc{} || ptr != end) {
      throw std::invalid_argument("deserialize: bad angle at line " + std::to_string(line_no));
    }
    circ = circ.append_gates({PauliString::parse(letters)});
    params.push_back(angle);
  }
  return {std::move(circ), std::move(params)};
}

}  // namespace vqdyn
