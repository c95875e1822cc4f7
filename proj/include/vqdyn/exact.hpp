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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "vqdyn/hamiltonian.hpp"
#include "vqdyn/state.hpp"

namespace vqdyn {

/// Exact reference evolution on a uniform time grid.
struct ExactTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  int substeps_per_interval = 1;
  double tolerance_estimate = 0.0;
};

/// Dense matrix of H(t), built term by term from the sparse Pauli action.
inline Eigen::MatrixXcd dense_matrix(const HamiltonianSum& h, double t) {
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& term : h.terms()) {
    const detail::PauliKernel kern(term.generator);
    const double c = term.coefficient(t);
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(static_cast<Eigen::Index>(b ^ kern.flip), static_cast<Eigen::Index>(b)) +=
          c * kern.phase(b);
    }
  }
  return m;
}

namespace detail {

// e^{-i H dt} for Hermitian H, via eigendecomposition.
inline Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("propagator: eigendecomposition failed");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  Eigen::VectorXcd phases(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    phases(k) = std::exp(std::complex<double>(0.0, -values(k) * dt));
  }
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t k = 0; k < s.dim(); ++k) v(static_cast<Eigen::Index>(k)) = s.amplitudes[k];
  return v;
}

inline StateVector from_eigen(int num_qubits, const Eigen::VectorXcd& v) {
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes.resize(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) s.amplitudes[static_cast<std::size_t>(k)] = v(k);
  return s;
}

// One full trajectory of the time-dependent integrator with a fixed substep
// count per grid interval: midpoint-coefficient exponential per substep.
inline std::vector<Eigen::VectorXcd> integrate_time_dependent(const HamiltonianSum& h,
                                                              const Eigen::VectorXcd& psi0,
                                                              const std::vector<double>& grid,
                                                              int substeps) {
  std::vector<Eigen::VectorXcd> states;
  states.reserve(grid.size());
  states.push_back(psi0);
  Eigen::VectorXcd psi = psi0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t0 = grid[k];
    const double h_step = (grid[k + 1] - grid[k]) / substeps;
    for (int j = 0; j < substeps; ++j) {
      const double t_mid = t0 + (j + 0.5) * h_step;
      psi = propagator(dense_matrix(h, t_mid), h_step) * psi;
    }
    states.push_back(psi);
  }
  return states;
}

}  // namespace detail

/// Exact evolution of psi0 over the grid. Time-independent Hamiltonians use a
/// dense matrix exponential per grid interval. Time-dependent ones use a
/// fixed-substep midpoint-exponential integrator whose substep count doubles
/// until two successive trajectories agree at the final time to within
/// `tolerance` in norm.
inline ExactTrajectory exact_evolve(const HamiltonianSum& h, const StateVector& psi0,
                                    const std::vector<double>& grid, double tolerance,
                                    int max_qubits = 12) {
  if (h.num_qubits() != psi0.num_qubits) {
    throw std::invalid_argument("exact_evolve: qubit count mismatch");
  }
  if (h.num_qubits() > max_qubits) {
    throw std::length_error("exact_evolve: qubit count exceeds the oracle cap");
  }
  if (grid.empty()) throw std::invalid_argument("exact_evolve: empty time grid");
  if (tolerance <= 0.0) throw std::invalid_argument("exact_evolve: tolerance must be positive");
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (grid[k + 1] <= grid[k]) {
      throw std::invalid_argument("exact_evolve: grid times must be strictly increasing");
    }
  }

  ExactTrajectory traj;
  traj.times = grid;

  if (grid.size() == 1) {
    traj.states.push_back(psi0);
    return traj;
  }

  if (!h.is_time_dependent()) {
    // Uniform spacing lets one eigendecomposition serve every interval.
    const double dt = grid[1] - grid[0];
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      if (std::abs((grid[k + 1] - grid[k]) - dt) > 1e-12) {
        throw std::invalid_argument("exact_evolve: non-uniform grid for time-independent evolution");
      }
    }
    const Eigen::MatrixXcd u = detail::propagator(dense_matrix(h, grid[0]), dt);
    Eigen::VectorXcd psi = detail::to_eigen(psi0);
    traj.states.push_back(psi0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      psi = u * psi;
      traj.states.push_back(detail::from_eigen(psi0.num_qubits, psi));
    }
    traj.tolerance_estimate = 0.0;
    return traj;
  }

  constexpr int kMaxSubsteps = 1 << 14;
  const Eigen::VectorXcd psi_init = detail::to_eigen(psi0);
  int substeps = 1;
  auto coarse = detail::integrate_time_dependent(h, psi_init, grid, substeps);
  while (true) {
    auto fine = detail::integrate_time_dependent(h, psi_init, grid, 2 * substeps);
    const double diff = (fine.back() - coarse.back()).norm();
    if (diff < tolerance) {
      traj.substeps_per_interval = 2 * substeps;
      traj.tolerance_estimate = diff;
      for (const auto& v : fine) traj.states.push_back(detail::from_eigen(psi0.num_qubits, v));
      return traj;
    }
    substeps *= 2;
    if (substeps > kMaxSubsteps) {
      throw std::runtime_error("exact_evolve: tolerance not reached within the substep budget");
    }
    coarse = std::move(fine);
  }
}

/// Pointwise 1 - |<Psi(t_k)|psi_k>|^2, clamped into [0, 1].
inline std::vector<double> exact_infidelity(const ExactTrajectory& exact,
                                            const std::vector<StateVector>& variational) {
  if (exact.states.size() != variational.size()) {
    throw std::invalid_argument("exact_infidelity: grid mismatch");
  }
  std::vector<double> values;
  values.reserve(variational.size());
  for (std::size_t k = 0; k < variational.size(); ++k) {
    const double overlap = std::norm(inner(exact.states[k], variational[k]));
    values.push_back(std::min(1.0, std::max(0.0, 1.0 - overlap)));
  }
  return values;
}

/// Trapezoidal rule over the uniform grid; the result carries units of time.
inline double integrated_exact_infidelity(const std::vector<double>& values, double dt) {
  if (values.size() < 2) {
    throw std::invalid_argument("integrated_exact_infidelity: need at least 2 grid points");
  }
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) acc += values[k];
  return acc * dt;
}

}  // namespace vqdyn
