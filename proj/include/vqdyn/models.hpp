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
#include <stdexcept>
#include <utility>
#include <vector>

#include "vqdyn/hamiltonian.hpp"
#include "vqdyn/pauli.hpp"
#include "vqdyn/state.hpp"

namespace vqdyn {

/// Open-boundary rectangular lattice, lx columns by ly rows.
struct LatticeSpec {
  int lx = 1;
  int ly = 1;

  int num_sites() const { return lx * ly; }
};

/// One first-order product-formula step: an ordered gate list, one rotation
/// e^{-i angle P} per Hamiltonian term. Gates earlier in the list act on the
/// state first.
struct TrotterGate {
  PauliString generator;
  double angle = 0.0;
};

struct TrotterStepCircuit {
  int num_qubits = 0;
  std::vector<TrotterGate> gates;
  double t = 0.0;
  double dt = 0.0;
};

/// Where time-dependent coefficients are sampled when building a Trotter step.
enum class CoefficientEval { midpoint, left };

/// Driven Heisenberg XYZ chain on an open line of `length` sites:
/// nearest-neighbor XX/YY/ZZ couplings plus a staggered sinusoidal Z drive
/// with coefficient (-1)^i sin(omega t) on site i.
///
/// Terms are stored in the fixed Trotter layout: even-bond XX,YY,ZZ gates,
/// odd-bond gates, then the single-qubit drive layer.
inline HamiltonianSum build_driven_xyz(int length, double jx, double jy, double jz,
                                       double omega) {
  if (length < 2) throw std::invalid_argument("build_driven_xyz: need at least 2 sites");
  HamiltonianSum h(length);
  auto add_static = [&](PauliString op, double coeff) {
    if (coeff != 0.0) h.add_term(std::move(op), coeff);
  };
  auto add_bond = [&](int i) {
    add_static(PauliString::two(length, i, Pauli::X, i + 1, Pauli::X), jx);
    add_static(PauliString::two(length, i, Pauli::Y, i + 1, Pauli::Y), jy);
    add_static(PauliString::two(length, i, Pauli::Z, i + 1, Pauli::Z), jz);
  };
  for (int i = 0; i + 1 < length; i += 2) add_bond(i);
  for (int i = 1; i + 1 < length; i += 2) add_bond(i);
  for (int i = 0; i < length; ++i) {
    const double stagger = (i % 2 == 0) ? 1.0 : -1.0;
    h.add_term(PauliString::single(length, i, Pauli::Z),
               [stagger, omega](double t) { return stagger * std::sin(omega * t); });
  }
  return h;
}

/// Jordan-Wigner image of the fermionic lowering operator c_i on N modes:
/// c_i = (Z...Z X I...)/2 + i (Z...Z Y I...)/2 with i leading Z letters.
inline std::vector<std::pair<std::complex<double>, PauliString>> jw_lower(int mode,
                                                                          int n_modes) {
  if (mode < 0 || mode >= n_modes) throw std::out_of_range("jw_lower: mode index out of range");
  std::vector<Pauli> x_letters(static_cast<std::size_t>(n_modes), Pauli::I);
  std::vector<Pauli> y_letters(static_cast<std::size_t>(n_modes), Pauli::I);
  for (int k = 0; k < mode; ++k) {
    x_letters[static_cast<std::size_t>(k)] = Pauli::Z;
    y_letters[static_cast<std::size_t>(k)] = Pauli::Z;
  }
  x_letters[static_cast<std::size_t>(mode)] = Pauli::X;
  y_letters[static_cast<std::size_t>(mode)] = Pauli::Y;
  return {{{0.5, 0.0}, PauliString(std::move(x_letters))},
          {{0.0, 0.5}, PauliString(std::move(y_letters))}};
}

namespace detail {

// Serpentine site enumeration: row 0 left-to-right, row 1 right-to-left, ...
inline int snake_index(int row, int col, int lx) {
  return row * lx + ((row % 2 == 0) ? col : lx - 1 - col);
}

// X_a Z...Z X_b (or Y...Y) with interior Z fill, a < b, on num_qubits qubits.
inline PauliString jw_hopping_string(int num_qubits, int a, int b, Pauli end_letter) {
  std::vector<Pauli> letters(static_cast<std::size_t>(num_qubits), Pauli::I);
  letters[static_cast<std::size_t>(a)] = end_letter;
  letters[static_cast<std::size_t>(b)] = end_letter;
  for (int k = a + 1; k < b; ++k) letters[static_cast<std::size_t>(k)] = Pauli::Z;
  return PauliString(std::move(letters));
}

}  // namespace detail

/// Fermi-Hubbard model on an open rectangular lattice, mapped to qubits via
/// the Jordan-Wigner transformation under snake ordering. Spin-up modes occupy
/// qubits 0..n_sites-1, spin-down modes n_sites..2*n_sites-1.
///
/// Each nearest-neighbor bond (i<j in snake order) contributes, per spin
/// sector, the two strings X_i Z..Z X_j and Y_i Z..Z Y_j with coefficient
/// -hopping/2. Each site contributes interaction/4 * Z_i Z_{i+n_sites} and
/// -interaction/4 on both single Z's; the constant shift is dropped.
///
/// Term order is the fixed Trotter layout: horizontal hops, vertical hops,
/// then interaction gates.
inline HamiltonianSum build_hubbard_jw(const LatticeSpec& lattice, double hopping,
                                       double interaction) {
  if (lattice.lx < 1 || lattice.ly < 1 || lattice.num_sites() < 2) {
    throw std::invalid_argument("build_hubbard_jw: degenerate lattice");
  }
  const int n_sites = lattice.num_sites();
  const int n = 2 * n_sites;
  HamiltonianSum h(n);
  auto add_static = [&](PauliString op, double coeff) {
    if (coeff != 0.0) h.add_term(std::move(op), coeff);
  };

  auto add_hop = [&](int site_a, int site_b) {
    int i = std::min(site_a, site_b);
    int j = std::max(site_a, site_b);
    for (int spin = 0; spin < 2; ++spin) {
      const int off = spin * n_sites;
      add_static(detail::jw_hopping_string(n, i + off, j + off, Pauli::X), -hopping / 2.0);
      add_static(detail::jw_hopping_string(n, i + off, j + off, Pauli::Y), -hopping / 2.0);
    }
  };

  for (int r = 0; r < lattice.ly; ++r) {
    for (int c = 0; c + 1 < lattice.lx; ++c) {
      add_hop(detail::snake_index(r, c, lattice.lx), detail::snake_index(r, c + 1, lattice.lx));
    }
  }
  for (int r = 0; r + 1 < lattice.ly; ++r) {
    for (int c = 0; c < lattice.lx; ++c) {
      add_hop(detail::snake_index(r, c, lattice.lx), detail::snake_index(r + 1, c, lattice.lx));
    }
  }
  for (int s = 0; s < n_sites; ++s) {
    add_static(PauliString::two(n, s, Pauli::Z, s + n_sites, Pauli::Z), interaction / 4.0);
    add_static(PauliString::single(n, s, Pauli::Z), -interaction / 4.0);
    add_static(PauliString::single(n, s + n_sites, Pauli::Z), -interaction / 4.0);
  }
  return h;
}

/// First-order Trotter step: one gate per Hamiltonian term, in term order,
/// with angle = coefficient(t_eval) * dt. Time-dependent coefficients are
/// sampled at the interval midpoint by default.
inline TrotterStepCircuit trotter_step(const HamiltonianSum& h, double t, double dt,
                                       CoefficientEval eval = CoefficientEval::midpoint) {
  if (dt <= 0.0) throw std::invalid_argument("trotter_step: dt must be positive");
  const double t_eval = (eval == CoefficientEval::midpoint) ? t + dt / 2.0 : t;
  TrotterStepCircuit step;
  step.num_qubits = h.num_qubits();
  step.t = t;
  step.dt = dt;
  step.gates.reserve(h.terms().size());
  for (const auto& term : h.terms()) {
    step.gates.push_back({term.generator, term.coefficient(t_eval) * dt});
  }
  return step;
}

inline void apply_in_place(const TrotterStepCircuit& step, StateVector& s) {
  if (step.num_qubits != s.num_qubits) {
    throw std::invalid_argument("trotter step / state qubit count mismatch");
  }
  for (const auto& gate : step.gates) {
    apply_pauli_rotation_in_place(gate.generator, gate.angle, s);
  }
}

inline StateVector apply(const TrotterStepCircuit& step, StateVector s) {
  apply_in_place(step, s);
  return s;
}

enum class InitialPattern { alternating01, hubbard_half_filling };

/// Antiferromagnetic bit patterns. alternating01 is 0101...; for the Hubbard
/// register (spin-up modes first, then spin-down) hubbard_half_filling places
/// opposite spins on alternating snake sites: up occupied on even sites, down
/// on odd sites, e.g. 10100101 for 8 qubits.
inline std::vector<int> antiferro_bits(int n, InitialPattern variant) {
  if (n < 1) throw std::invalid_argument("antiferro_bits: need at least one qubit");
  std::vector<int> bits(static_cast<std::size_t>(n), 0);
  switch (variant) {
    case InitialPattern::alternating01:
      for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = i % 2;
      break;
    case InitialPattern::hubbard_half_filling: {
      if (n % 2 != 0) {
        throw std::invalid_argument("antiferro_bits: hubbard_half_filling needs an even qubit count");
      }
      const int n_sites = n / 2;
      for (int s = 0; s < n_sites; ++s) {
        bits[static_cast<std::size_t>(s)] = (s % 2 == 0) ? 1 : 0;
        bits[static_cast<std::size_t>(n_sites + s)] = (s % 2 == 1) ? 1 : 0;
      }
      break;
    }
  }
  return bits;
}

}  // namespace vqdyn
