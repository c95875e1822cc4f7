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

#include "vqdyn/exact.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

#include "test_helpers.hpp"
#include "vqdyn/models.hpp"

using namespace vqdyn;
using vqdyn::testing::max_amplitude_diff;

namespace {

std::vector<double> uniform_grid(double dt, int n_intervals) {
  std::vector<double> grid;
  for (int k = 0; k <= n_intervals; ++k) grid.push_back(k * dt);
  return grid;
}

Eigen::MatrixXcd ham_matrix(const HamiltonianSum& h, double t) {
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) m += term.coefficient(t) * to_matrix(term.generator);
  return m;
}

}  // namespace

TEST_CASE("Larmor precession reproduces the closed form") {
  const double omega0 = 1.7;
  HamiltonianSum h(1);
  h.add_term(PauliString::parse("Z"), omega0 / 2.0);
  StateVector plus = zero_state(1);
  plus.amplitudes = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  const auto traj = exact_evolve(h, plus, uniform_grid(0.05, 40), 1e-10);
  const PauliString x = PauliString::parse("X");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double expected = std::cos(omega0 * traj.times[k]);
    REQUIRE(std::abs(pauli_expectation(x, traj.states[k]).real() - expected) < 1e-8);
  }
}

TEST_CASE("length-one grid returns the initial state") {
  HamiltonianSum h(2);
  h.add_term(PauliString::parse("XX"), 1.0);
  auto gen = vqdyn::testing::rng(41);
  const StateVector psi = vqdyn::testing::random_state(2, gen);
  const auto traj = exact_evolve(h, psi, {0.0}, 1e-10);
  REQUIRE(traj.states.size() == 1);
  REQUIRE(max_amplitude_diff(traj.states[0], psi) == 0.0);
}

TEST_CASE("time-independent evolution matches a single matrix exponential") {
  HamiltonianSum h(3);
  h.add_term(PauliString::parse("XXI"), 1.0);
  h.add_term(PauliString::parse("IYY"), 0.8);
  h.add_term(PauliString::parse("ZIZ"), 0.6);
  h.add_term(PauliString::parse("IZI"), -0.4);
  auto gen = vqdyn::testing::rng(42);
  const StateVector psi = vqdyn::testing::random_state(3, gen);

  const double dt = 0.05;
  const int n = 40;
  const auto traj = exact_evolve(h, psi, uniform_grid(dt, n), 1e-10);

  const Eigen::MatrixXcd u =
      (std::complex<double>(0.0, -dt * n) * ham_matrix(h, 0.0)).exp();
  const StateVector expected =
      vqdyn::testing::from_eigen(3, u * vqdyn::testing::to_eigen(psi));
  REQUIRE(max_amplitude_diff(traj.states.back(), expected) < 1e-10);

  SECTION("energy and norm are conserved along the grid") {
    const double e0 = expectation(h, 0.0, traj.states.front());
    for (const auto& s : traj.states) {
      REQUIRE(std::abs(expectation(h, 0.0, s) - e0) < 1e-8);
      REQUIRE(std::abs(norm(s) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("time-dependent integrator agrees with a fine RK4 reference") {
  const auto h = build_driven_xyz(2, 1.0, 0.8, 0.6, 2.0);
  const StateVector psi = basis_state({0, 1});
  const double t_final = 0.5;
  const auto traj = exact_evolve(h, psi, uniform_grid(0.05, 10), 1e-9);
  REQUIRE(traj.substeps_per_interval >= 2);
  REQUIRE(traj.tolerance_estimate < 1e-9);

  // Classic RK4 on i d/dt psi = H(t) psi with a small fixed step.
  Eigen::VectorXcd y = vqdyn::testing::to_eigen(psi);
  const double rk_h = 1e-4;
  const int rk_steps = static_cast<int>(std::llround(t_final / rk_h));
  const std::complex<double> mi(0.0, -1.0);
  for (int k = 0; k < rk_steps; ++k) {
    const double t = k * rk_h;
    const Eigen::VectorXcd k1 = mi * (ham_matrix(h, t) * y);
    const Eigen::VectorXcd k2 = mi * (ham_matrix(h, t + rk_h / 2) * (y + rk_h / 2 * k1));
    const Eigen::VectorXcd k3 = mi * (ham_matrix(h, t + rk_h / 2) * (y + rk_h / 2 * k2));
    const Eigen::VectorXcd k4 = mi * (ham_matrix(h, t + rk_h) * (y + rk_h * k3));
    y += rk_h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  REQUIRE((vqdyn::testing::to_eigen(traj.states.back()) - y).norm() < 1e-7);

  SECTION("norm conservation") {
    for (const auto& s : traj.states) REQUIRE(std::abs(norm(s) - 1.0) < 1e-10);
  }

  SECTION("a tighter tolerance stays within the reported estimate") {
    const auto finer = exact_evolve(h, psi, uniform_grid(0.05, 10), 1e-10);
    REQUIRE(finer.substeps_per_interval >= traj.substeps_per_interval);
    REQUIRE((vqdyn::testing::to_eigen(finer.states.back()) -
             vqdyn::testing::to_eigen(traj.states.back()))
                .norm() < 1e-9 + 1e-10);
  }
}

TEST_CASE("exact_infidelity pointwise values") {
  auto gen = vqdyn::testing::rng(43);
  const StateVector a = vqdyn::testing::random_state(3, gen);
  const StateVector b = vqdyn::testing::random_state(3, gen);

  ExactTrajectory traj;
  traj.times = {0.0, 0.1};
  traj.states = {a, a};

  SECTION("identical states give zero") {
    const auto values = exact_infidelity(traj, {a, a});
    REQUIRE(values[0] == 0.0);
    REQUIRE(values[1] == 0.0);
  }

  SECTION("orthogonal states give one") {
    ExactTrajectory basis;
    basis.times = {0.0};
    basis.states = {basis_state({0})};
    const auto values = exact_infidelity(basis, {basis_state({1})});
    REQUIRE(values[0] == 1.0);
  }

  SECTION("random pair matches the direct overlap") {
    const auto values = exact_infidelity(traj, {b, b});
    const double expected = 1.0 - std::norm(inner(a, b));
    REQUIRE(std::abs(values[0] - expected) < 1e-14);
  }

  SECTION("grid mismatch is rejected") {
    REQUIRE_THROWS_AS(exact_infidelity(traj, {a}), std::invalid_argument);
  }
}

TEST_CASE("trapezoidal integration of infidelity series") {
  REQUIRE(integrated_exact_infidelity(std::vector<double>(41, 0.0), 0.05) == 0.0);

  const double c = 0.37;
  REQUIRE(std::abs(integrated_exact_infidelity(std::vector<double>(41, c), 0.05) - c * 2.0) <
          1e-14);

  // Linear ramp 0 -> 1 over [0, 2]; the trapezoid rule is exact.
  std::vector<double> ramp;
  for (int k = 0; k <= 40; ++k) ramp.push_back(k / 40.0);
  REQUIRE(std::abs(integrated_exact_infidelity(ramp, 0.05) - 1.0) < 1e-14);

  REQUIRE_THROWS_AS(integrated_exact_infidelity({0.0}, 0.05), std::invalid_argument);
}

TEST_CASE("oracle cap is enforced") {
  HamiltonianSum h(3);
  h.add_term(PauliString::parse("XXI"), 1.0);
  REQUIRE_THROWS_AS(exact_evolve(h, basis_state({0, 0, 0}), {0.0, 0.1}, 1e-8, 2),
                    std::length_error);
}
