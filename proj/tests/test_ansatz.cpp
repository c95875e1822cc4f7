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

#include "vqdyn/ansatz.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "test_helpers.hpp"
#include "vqdyn/models.hpp"

using namespace vqdyn;
using vqdyn::testing::max_amplitude_diff;

namespace {

AnsatzCircuit random_circuit(int num_qubits, int num_gates, std::mt19937& gen,
                             std::vector<double>* params_out) {
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  AnsatzCircuit circ(num_qubits, std::vector<int>(static_cast<std::size_t>(num_qubits), 0));
  std::vector<PauliString> gates;
  for (int g = 0; g < num_gates; ++g) {
    gates.push_back(vqdyn::testing::random_pauli(num_qubits, gen));
  }
  circ = circ.append_gates(gates);
  if (params_out) {
    params_out->clear();
    for (int g = 0; g < num_gates; ++g) params_out->push_back(angle(gen));
  }
  return circ;
}

}  // namespace

TEST_CASE("prepare on the empty circuit returns the initial basis state") {
  const AnsatzCircuit circ(4, {0, 1, 0, 1});
  const StateVector s = circ.prepare({});
  REQUIRE(max_amplitude_diff(s, basis_state({0, 1, 0, 1})) == 0.0);
}

TEST_CASE("prepare with a single X rotation") {
  AnsatzCircuit circ(1, {0});
  circ = circ.append_gates({PauliString::parse("X")});
  const std::vector<double> params = {M_PI / 4.0};
  const StateVector s = circ.prepare(params);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(s.amplitudes[0] - inv_sqrt2) < 1e-15);
  REQUIRE(std::abs(s.amplitudes[1] - std::complex<double>(0.0, -inv_sqrt2)) < 1e-15);
}

TEST_CASE("all-zero parameters reproduce the initial state") {
  auto gen = vqdyn::testing::rng(31);
  const AnsatzCircuit circ = random_circuit(3, 7, gen, nullptr);
  const std::vector<double> zeros(7, 0.0);
  REQUIRE(max_amplitude_diff(circ.prepare(zeros), basis_state(circ.initial_bits())) < 1e-15);
}

TEST_CASE("prepare rejects wrong parameter counts") {
  AnsatzCircuit circ(2, {0, 0});
  circ = circ.append_gates({PauliString::parse("XX")});
  REQUIRE_THROWS_AS(circ.prepare({}), std::invalid_argument);
}

TEST_CASE("append_gates grows the circuit without disturbing the state") {
  auto gen = vqdyn::testing::rng(32);
  std::vector<double> params;
  AnsatzCircuit circ = random_circuit(3, 5, gen, &params);
  const StateVector before = circ.prepare(params);

  const AnsatzCircuit grown = circ.append_gates({PauliString::parse("XXI"), PauliString::parse("IIZ")});
  REQUIRE(grown.num_parameters() == 7);
  std::vector<double> padded = params;
  padded.resize(7, 0.0);
  REQUIRE(max_amplitude_diff(grown.prepare(padded), before) < 1e-12);

  REQUIRE_THROWS_AS(circ.append_gates({PauliString::parse("III")}), std::invalid_argument);
  REQUIRE_THROWS_AS(circ.append_gates({}), std::invalid_argument);
}

TEST_CASE("cnot counts follow the ladder rule") {
  AnsatzCircuit circ(4, {0, 0, 0, 0});
  circ = circ.append_gates({PauliString::parse("IZZI")});
  REQUIRE(cnot_count(circ) == 2);

  circ = circ.append_gates({PauliString::parse("ZIII")});
  REQUIRE(cnot_count(circ) == 2);  // single-qubit rotations are free

  circ = circ.append_gates({PauliString::parse("XZZX")});
  REQUIRE(cnot_count(circ) == 2 + 6);
}

TEST_CASE("one driven-XYZ Trotter step on 4 sites costs 18 CNOTs") {
  const auto h = build_driven_xyz(4, 1.0, 0.8, 0.6, 2.0);
  const auto step = trotter_step(h, 0.0, 0.05);
  REQUIRE(cnot_count(step) == 18);
}

TEST_CASE("cnot_count is additive under concatenation") {
  auto gen = vqdyn::testing::rng(33);
  AnsatzCircuit a = random_circuit(4, 6, gen, nullptr);
  std::vector<PauliString> extra;
  for (int g = 0; g < 5; ++g) extra.push_back(vqdyn::testing::random_pauli(4, gen));
  AnsatzCircuit b(4, a.initial_bits());
  b = b.append_gates(extra);
  REQUIRE(cnot_count(a.append_gates(extra)) == cnot_count(a) + cnot_count(b));
}

TEST_CASE("greedy depth") {
  AnsatzCircuit circ(3, {0, 0, 0});
  REQUIRE(depth(circ) == 0);

  circ = circ.append_gates({PauliString::parse("ZII"), PauliString::parse("IZI")});
  REQUIRE(depth(circ) == 1);

  circ = circ.append_gates({PauliString::parse("ZZI")});
  REQUIRE(depth(circ) == 2);
}

TEST_CASE("a disjoint layer covering every qubit adds exactly one to the depth") {
  auto gen = vqdyn::testing::rng(34);
  AnsatzCircuit circ = random_circuit(4, 9, gen, nullptr);
  const int before = depth(circ);
  circ = circ.append_gates({PauliString::parse("XXII"), PauliString::parse("IIZI"),
                            PauliString::parse("IIIY")});
  REQUIRE(depth(circ) == before + 1);
}

TEST_CASE("serialize emits the documented line format") {
  AnsatzCircuit circ(4, {0, 1, 0, 1});
  circ = circ.append_gates({PauliString::parse("XXII")});
  const std::vector<double> params = {0.125};
  REQUIRE(serialize(circ, params) == "N 4 INIT 0101\nXXII 0.125\n");

  const AnsatzCircuit empty(2, {1, 0});
  REQUIRE(serialize(empty, {}) == "N 2 INIT 10\n");
}

TEST_CASE("serialize round-trips a random 20-gate circuit") {
  auto gen = vqdyn::testing::rng(35);
  std::vector<double> params;
  const AnsatzCircuit circ = random_circuit(5, 20, gen, &params);
  const auto [parsed, parsed_params] = deserialize(serialize(circ, params));
  REQUIRE(parsed.num_qubits() == circ.num_qubits());
  REQUIRE(parsed.initial_bits() == circ.initial_bits());
  REQUIRE(parsed.gates().size() == circ.gates().size());
  for (std::size_t g = 0; g < circ.gates().size(); ++g) {
    REQUIRE(parsed.gates()[g].generator == circ.gates()[g].generator);
    REQUIRE(parsed.gates()[g].parameter_index == circ.gates()[g].parameter_index);
  }
  REQUIRE(parsed_params == params);  // %.17g round-trips doubles exactly
}

TEST_CASE("deserialize rejects malformed documents") {
  REQUIRE_THROWS_AS(deserialize(""), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("M 2 INIT 00\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("N 2 INIT 001\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("N 2 INIT 00\nXA 0.5\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("N 2 INIT 00\nXX abc\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("N 2 INIT 00\nXX\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(deserialize("N 2 INIT 00\nXX 0.5 junk\n"), std::invalid_argument);
}

TEST_CASE("prefix truncates gates and parameters together") {
  auto gen = vqdyn::testing::rng(36);
  std::vector<double> params;
  const AnsatzCircuit circ = random_circuit(3, 8, gen, &params);
  const AnsatzCircuit head = circ.prefix(3);
  REQUIRE(head.num_parameters() == 3);
  REQUIRE(head.gates().size() == 3);
  const std::vector<double> head_params(params.begin(), params.begin() + 3);
  REQUIRE(std::isfinite(norm(head.prepare(head_params))));
  REQUIRE_THROWS_AS(circ.prefix(9), std::out_of_range);
}
