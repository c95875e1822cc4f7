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

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vqdyn/pauli.hpp"

namespace vqdyn {

/// One weighted term of a Hamiltonian. Static terms carry a constant
/// coefficient function and time_dependent = false.
struct HamiltonianTerm {
  PauliString generator;
  std::function<double(double)> coefficient;  // real coefficient at time t
  bool time_dependent = false;
};

/// Weighted sum of Pauli strings with optionally time-dependent coefficients.
///
/// All generators share the qubit count. All-identity generators are rejected;
/// constant energy shifts contribute only a global phase to the evolution and
/// must be dropped by the caller.
class HamiltonianSum {
 public:
  explicit HamiltonianSum(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("HamiltonianSum needs at least one qubit");
  }

  void add_term(PauliString generator, double coefficient) {
    check(generator);
    terms_.push_back({std::move(generator), [coefficient](double) { return coefficient; }, false});
  }

  void add_term(PauliString generator, std::function<double(double)> coefficient) {
    check(generator);
    terms_.push_back({std::move(generator), std::move(coefficient), true});
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  bool is_time_dependent() const {
    for (const auto& term : terms_) {
      if (term.time_dependent) return true;
    }
    return false;
  }

 private:
  void check(const PauliString& generator) const {
    if (generator.num_qubits() != num_qubits_) {
      throw std::invalid_argument("HamiltonianSum: term qubit count mismatch");
    }
    if (generator.is_identity()) {
      throw std::invalid_argument("HamiltonianSum: all-identity terms are not allowed");
    }
  }

  int num_qubits_;
  std::vector<HamiltonianTerm> terms_;
};

/// A labeled static Pauli-sum observable. Unlike HamiltonianSum, identity
/// terms are allowed here (they contribute their coefficient verbatim).
struct Observable {
  std::string label;
  std::vector<std::pair<double, PauliString>> terms;
};

}  // namespace vqdyn
