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

#include "vqdyn/state.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

#include "test_helpers.hpp"
#include "vqdyn/models.hpp"

using namespace vqdyn;
using vqdyn::testing::max_amplitude_diff;
using vqdyn::testing::random_pauli;
using vqdyn::testing::random_state;

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

TEST_CASE("basis_state puts the single amplitude at the right index") {
  auto s = basis_state({0, 0});
  REQUIRE(s.amplitudes[0] == std::complex<double>(1.0, 0.0));

  // b0 is the most significant bit.
  s = basis_state({0, 1, 0, 1});
  REQUIRE(s.amplitudes[5] == std::complex<double>(1.0, 0.0));
  REQUIRE(norm(s) == 1.0);

  s = basis_state({1, 0, 1, 0, 0, 1, 0, 1});
  REQUIRE(s.amplitudes[0b10100101] == std::complex<double>(1.0, 0.0));

  REQUIRE_THROWS_AS(basis_state({}), std::invalid_argument);
  REQUIRE_THROWS_AS(basis_state({0, 2}), std::invalid_argument);
}

TEST_CASE("apply_pauli on basis states") {
  auto s = apply_pauli(PauliString::parse("Z"), basis_state({0}));
  REQUIRE(s.amplitudes[0] == std::complex<double>(1.0, 0.0));

  s = apply_pauli(PauliString::parse("X"), basis_state({0}));
  REQUIRE(s.amplitudes[0] == std::complex<double>(0.0, 0.0));
  REQUIRE(s.amplitudes[1] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("apply_pauli XZ on a superposition") {
  StateVector s = zero_state(2);
  s.amplitudes[0] = kInvSqrt2;  // |00>
  s.amplitudes[1] = kInvSqrt2;  // |01>
  s = apply_pauli(PauliString::parse("XZ"), std::move(s));
  REQUIRE(std::abs(s.amplitudes[2] - kInvSqrt2) < 1e-15);   // |10>
  REQUIRE(std::abs(s.amplitudes[3] + kInvSqrt2) < 1e-15);   // -|11>
  REQUIRE(std::abs(s.amplitudes[0]) < 1e-15);
  REQUIRE(std::abs(s.amplitudes[1]) < 1e-15);
}

TEST_CASE("apply_pauli matches dense matrix multiplication up to N=4") {
  auto gen = vqdyn::testing::rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const PauliString p = random_pauli(n, gen, true);
      const StateVector s = random_state(n, gen);
      const Eigen::VectorXcd expected = to_matrix(p) * vqdyn::testing::to_eigen(s);
      const StateVector got = apply_pauli(p, s);
      REQUIRE(max_amplitude_diff(got, vqdyn::testing::from_eigen(n, expected)) < 1e-12);
    }
  }
}

TEST_CASE("apply_pauli is an involution") {
  auto gen = vqdyn::testing::rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    const PauliString p = random_pauli(5, gen);
    const StateVector s = random_state(5, gen);
    const StateVector twice = apply_pauli(p, apply_pauli(p, s));
    REQUIRE(max_amplitude_diff(twice, s) < 1e-12);
  }
}

TEST_CASE("rotation examples") {
  const StateVector zero = basis_state({0});

  SECTION("theta = 0 leaves any state unchanged") {
    auto gen = vqdyn::testing::rng(13);
    const StateVector s = random_state(3, gen);
    REQUIRE(max_amplitude_diff(apply_pauli_rotation(random_pauli(3, gen), 0.0, s), s) < 1e-15);
  }

  SECTION("Z rotation by pi/2 on |0> gives the global phase -i") {
    const auto s = apply_pauli_rotation(PauliString::parse("Z"), M_PI / 2.0, zero);
    REQUIRE(std::abs(s.amplitudes[0] - (-kI)) < 1e-15);
  }

  SECTION("X rotation by pi/4 on |0>") {
    const auto s = apply_pauli_rotation(PauliString::parse("X"), M_PI / 4.0, zero);
    REQUIRE(std::abs(s.amplitudes[0] - kInvSqrt2) < 1e-15);
    REQUIRE(std::abs(s.amplitudes[1] - (-kI * kInvSqrt2)) < 1e-15);
  }
}

TEST_CASE("rotations compose additively and preserve norm") {
  auto gen = vqdyn::testing::rng(14);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 8);
    const PauliString p = random_pauli(n, gen);
    const StateVector s = random_state(n, gen);
    const double a = angle(gen);
    const double b = angle(gen);
    const StateVector joint = apply_pauli_rotation(p, a + b, s);
    const StateVector stepped = apply_pauli_rotation(p, a, apply_pauli_rotation(p, b, s));
    REQUIRE(max_amplitude_diff(joint, stepped) < 1e-12);
    REQUIRE(std::abs(norm(joint) - 1.0) < 1e-12);
  }
}

TEST_CASE("rotation agrees with the matrix exponential") {
  // e^{-i theta P} psi via eigen-decomposition of the dense Pauli matrix.
  auto gen = vqdyn::testing::rng(15);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 2);
    const PauliString p = random_pauli(n, gen);
    const StateVector s = random_state(n, gen);
    const double theta = angle(gen);
    const Eigen::MatrixXcd m = to_matrix(p);
    const Eigen::MatrixXcd u = (std::complex<double>(0.0, -theta) * m).exp();
    const Eigen::VectorXcd expected = u * vqdyn::testing::to_eigen(s);
    REQUIRE(max_amplitude_diff(apply_pauli_rotation(p, theta, s),
                               vqdyn::testing::from_eigen(n, expected)) < 1e-12);
  }
}

TEST_CASE("inner products") {
  auto gen = vqdyn::testing::rng(16);
  const StateVector s = random_state(4, gen);
  REQUIRE(std::abs(inner(s, s) - std::complex<double>(1.0, 0.0)) < 1e-12);

  REQUIRE(inner(basis_state({0}), basis_state({1})) == std::complex<double>(0.0, 0.0));

  const auto rotated = apply_pauli_rotation(PauliString::parse("X"), M_PI / 4.0, basis_state({0}));
  REQUIRE(std::abs(inner(basis_state({0}), rotated) - kInvSqrt2) < 1e-15);

  REQUIRE_THROWS_AS(inner(basis_state({0}), basis_state({0, 0})), std::invalid_argument);
}

TEST_CASE("expectation values on product states") {
  HamiltonianSum z0(4);
  z0.add_term(PauliString::parse("ZIII"), 1.0);
  REQUIRE(expectation(z0, 0.0, basis_state({0, 1, 0, 1})) == 1.0);

  HamiltonianSum zz(4);
  zz.add_term(PauliString::parse("ZZII"), 1.0);
  REQUIRE(expectation(zz, 0.0, basis_state({0, 1, 0, 1})) == -1.0);

  HamiltonianSum x0(1);
  x0.add_term(PauliString::parse("X"), 1.0);
  StateVector plus = zero_state(1);
  plus.amplitudes = {kInvSqrt2, kInvSqrt2};
  REQUIRE(std::abs(expectation(x0, 0.0, plus) - 1.0) < 1e-12);
}

TEST_CASE("pauli expectation stays in [-1, 1]") {
  auto gen = vqdyn::testing::rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 6);
    const double value = pauli_expectation(random_pauli(n, gen), random_state(n, gen)).real();
    REQUIRE(value >= -1.0 - 1e-10);
    REQUIRE(value <= 1.0 + 1e-10);
  }
}
