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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vqdyn/hamiltonian.hpp"
#include "vqdyn/pauli.hpp"

namespace vqdyn {

/// Full statevector of an N-qubit register: 2^N complex amplitudes.
///
/// Basis convention: |b0 b1 ... b_{N-1}> indexes amplitudes with b0 (qubit 0)
/// as the most significant bit, matching left-to-right site labels.
struct StateVector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
};

inline StateVector zero_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw std::invalid_argument("StateVector supports 1..30 qubits");
  }
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
  return s;
}

/// Computational basis state |bits[0] bits[1] ...>.
inline StateVector basis_state(const std::vector<int>& bits) {
  if (bits.empty()) throw std::invalid_argument("basis_state: empty bit sequence");
  StateVector s = zero_state(static_cast<int>(bits.size()));
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis_state: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  s.amplitudes[index] = {1.0, 0.0};
  return s;
}

inline double norm(const StateVector& s) {
  double acc = 0.0;
  for (const auto& a : s.amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

/// <a|b> = sum_k conj(a_k) b_k.
inline std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits) throw std::invalid_argument("inner: qubit count mismatch");
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    acc += std::conj(a.amplitudes[k]) * b.amplitudes[k];
  }
  return acc;
}

namespace detail {

// Amplitude-space action of a Pauli string: P|b> = phase(b) |b ^ flip>, where
// flip has bits at X/Y letters and phase(b) = i^{#Y} * (-1)^{popcount(b & sign)}
// with sign covering Y/Z letters. Amplitude bit of qubit q is (N-1-q).
struct PauliKernel {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  std::complex<double> y_factor{1.0, 0.0};

  explicit PauliKernel(const PauliString& p) {
    const int n = p.num_qubits();
    int ny = 0;
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      switch (p.letter(q)) {
        case Pauli::I: break;
        case Pauli::X: flip |= bit; break;
        case Pauli::Y: flip |= bit; sign |= bit; ++ny; break;
        case Pauli::Z: sign |= bit; break;
      }
    }
    static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    y_factor = kIPow[ny % 4];
  }

  std::complex<double> phase(std::uint64_t b) const {
    return (std::popcount(b & sign) & 1) ? -y_factor : y_factor;
  }
};

inline void check_match(const PauliString& p, const StateVector& s) {
  if (p.num_qubits() != s.num_qubits) {
    throw std::invalid_argument("pauli/state qubit count mismatch");
  }
}

}  // namespace detail

/// s <- P s, computed without forming the 2^N x 2^N matrix.
inline void apply_pauli_in_place(const PauliString& p, StateVector& s) {
  detail::check_match(p, s);
  const detail::PauliKernel kern(p);
  auto& amp = s.amplitudes;
  if (kern.flip == 0) {
    for (std::uint64_t k = 0; k < amp.size(); ++k) amp[k] *= kern.phase(k);
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (std::bit_width(kern.flip) - 1);
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    if (k & pivot) continue;
    const std::uint64_t j = k ^ kern.flip;
    const std::complex<double> ak = amp[k];
    amp[k] = kern.phase(j) * amp[j];
    amp[j] = kern.phase(k) * ak;
  }
}

inline StateVector apply_pauli(const PauliString& p, StateVector s) {
  apply_pauli_in_place(p, s);
  return s;
}

/// s <- e^{-i theta P} s = cos(theta) s - i sin(theta) (P s). Exact because
/// every Pauli string is involutory.
inline void apply_pauli_rotation_in_place(const PauliString& p, double theta, StateVector& s) {
  detail::check_match(p, s);
  const detail::PauliKernel kern(p);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  auto& amp = s.amplitudes;
  if (kern.flip == 0) {
    // Diagonal generator: per-amplitude phase e^{-i theta * (+-1)}.
    const std::complex<double> plus{c, -sn};
    const std::complex<double> minus{c, sn};
    for (std::uint64_t k = 0; k < amp.size(); ++k) {
      amp[k] *= (std::popcount(k & kern.sign) & 1) ? minus : plus;
    }
    return;
  }
  const std::complex<double> mis{0.0, -sn};  // -i sin(theta)
  const std::uint64_t pivot = std::uint64_t{1} << (std::bit_width(kern.flip) - 1);
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    if (k & pivot) continue;
    const std::uint64_t j = k ^ kern.flip;
    const std::complex<double> ak = amp[k];
    const std::complex<double> aj = amp[j];
    amp[k] = c * ak + mis * (kern.phase(j) * aj);
    amp[j] = c * aj + mis * (kern.phase(k) * ak);
  }
}

inline StateVector apply_pauli_rotation(const PauliString& p, double theta, StateVector s) {
  apply_pauli_rotation_in_place(p, theta, s);
  return s;
}

/// <s|P|s> as a complex number (real up to roundoff for any Pauli string).
inline std::complex<double> pauli_expectation(const PauliString& p, const StateVector& s) {
  detail::check_match(p, s);
  const detail::PauliKernel kern(p);
  std::complex<double> acc = 0.0;
  for (std::uint64_t k = 0; k < s.amplitudes.size(); ++k) {
    acc += std::conj(s.amplitudes[k ^ kern.flip]) * kern.phase(k) * s.amplitudes[k];
  }
  return acc;
}

/// <s|H(t)|s>. The imaginary part must vanish (Hermitian sum); anything above
/// 1e-10 is reported as an error.
inline double expectation(const HamiltonianSum& h, double t, const StateVector& s) {
  if (h.num_qubits() != s.num_qubits) {
    throw std::invalid_argument("expectation: qubit count mismatch");
  }
  std::complex<double> acc = 0.0;
  for (const auto& term : h.terms()) {
    acc += term.coefficient(t) * pauli_expectation(term.generator, s);
  }
  if (std::abs(acc.imag()) > 1e-10) {
    throw std::runtime_error("expectation: non-Hermitian sum (imaginary part above tolerance)");
  }
  return acc.real();
}

/// Expectation value of a labeled observable; identity terms add their
/// coefficient directly.
inline double expectation_value(const Observable& obs, const StateVector& s) {
  std::complex<double> acc = 0.0;
  for (const auto& [coeff, op] : obs.terms) {
    if (op.is_identity()) {
      acc += coeff;
    } else {
      acc += coeff * pauli_expectation(op, s);
    }
  }
  if (std::abs(acc.imag()) > 1e-10) {
    throw std::runtime_error("expectation_value: imaginary part above tolerance");
  }
  return acc.real();
}

}  // namespace vqdyn
