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

#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vqdyn {

/// Single-qubit Pauli letter.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::logic_error("invalid Pauli letter");
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli character '") + c +
                                  "' (expected one of I, X, Y, Z)");
  }
}

/// An N-qubit tensor product of single-qubit Pauli operators.
///
/// Letters are stored densely, one per qubit; qubit 0 is the leftmost tensor
/// factor. Values are immutable after construction and safe to share across
/// threads.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
      throw std::invalid_argument("PauliString needs at least one qubit");
    }
  }

  static PauliString identity(int num_qubits) {
    return PauliString(std::vector<Pauli>(check_count(num_qubits), Pauli::I));
  }

  static PauliString single(int num_qubits, int qubit, Pauli p) {
    std::vector<Pauli> letters(check_count(num_qubits), Pauli::I);
    letters.at(static_cast<std::size_t>(check_index(qubit, num_qubits))) = p;
    return PauliString(std::move(letters));
  }

  static PauliString two(int num_qubits, int qa, Pauli pa, int qb, Pauli pb) {
    if (qa == qb) {
      throw std::invalid_argument("two-qubit Pauli needs distinct qubits");
    }
    std::vector<Pauli> letters(check_count(num_qubits), Pauli::I);
    letters.at(static_cast<std::size_t>(check_index(qa, num_qubits))) = pa;
    letters.at(static_cast<std::size_t>(check_index(qb, num_qubits))) = pb;
    return PauliString(std::move(letters));
  }

  /// Parses a letter string such as "XIIZ". Rejects anything outside {I,X,Y,Z}.
  static PauliString parse(std::string_view text) {
    std::vector<Pauli> letters;
    letters.reserve(text.size());
    for (char c : text) letters.push_back(pauli_from_char(c));
    return PauliString(std::move(letters));
  }

  int num_qubits() const { return static_cast<int>(letters_.size()); }

  Pauli letter(int qubit) const {
    return letters_.at(static_cast<std::size_t>(qubit));
  }

  const std::vector<Pauli>& letters() const { return letters_; }

  /// Number of non-identity letters.
  int weight() const {
    int w = 0;
    for (Pauli p : letters_) w += (p != Pauli::I);
    return w;
  }

  bool is_identity() const { return weight() == 0; }

  /// Indices of the non-identity letters, ascending.
  std::vector<int> support() const {
    std::vector<int> idx;
    for (int q = 0; q < num_qubits(); ++q) {
      if (letters_[static_cast<std::size_t>(q)] != Pauli::I) idx.push_back(q);
    }
    return idx;
  }

  /// Support as a bit mask, bit q set iff qubit q carries a non-identity letter.
  std::uint64_t support_mask() const {
    if (num_qubits() > 64) throw std::length_error("support_mask limited to 64 qubits");
    std::uint64_t mask = 0;
    for (int q = 0; q < num_qubits(); ++q) {
      if (letters_[static_cast<std::size_t>(q)] != Pauli::I) mask |= 1ULL << q;
    }
    return mask;
  }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Pauli p : letters_) s.push_back(pauli_char(p));
    return s;
  }

  auto operator<=>(const PauliString&) const = default;

 private:
  static int check_count(int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("num_qubits must be positive");
    return num_qubits;
  }
  static int check_index(int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) {
      throw std::out_of_range("qubit index out of range");
    }
    return qubit;
  }

  std::vector<Pauli> letters_;
};

/// True iff p and q commute: the number of positions where both letters are
/// non-identity and differ must be even.
inline bool commutes(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("commutes: qubit count mismatch");
  }
  int anti = 0;
  for (int i = 0; i < p.num_qubits(); ++i) {
    Pauli a = p.letter(i);
    Pauli b = q.letter(i);
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return anti % 2 == 0;
}

/// Dense 2^N x 2^N matrix of the Pauli string, qubit 0 as the leftmost
/// Kronecker factor. Intended for small-N oracle checks only.
inline Eigen::MatrixXcd to_matrix(const PauliString& p, int max_qubits = 10) {
  if (p.num_qubits() > max_qubits) {
    throw std::length_error("to_matrix: qubit count exceeds the oracle cap");
  }
  using cd = std::complex<double>;
  auto factor = [](Pauli letter) {
    Eigen::Matrix2cd m;
    switch (letter) {
      case Pauli::I: m << 1, 0, 0, 1; break;
      case Pauli::X: m << 0, 1, 1, 0; break;
      case Pauli::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
      case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
  };
  // Fold factors from the last letter so qubit 0 ends up leftmost:
  // kron(f_0, kron(f_1, ... kron(f_{N-2}, f_{N-1}))).
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Ones(1, 1);
  for (int q = p.num_qubits() - 1; q >= 0; --q) {
    Eigen::Matrix2cd f = factor(p.letter(q));
    const Eigen::Index n = result.rows();
    Eigen::MatrixXcd next(2 * n, 2 * n);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        next.block(r * n, c * n, n, n) = f(r, c) * result;
      }
    }
    result.swap(next);
  }
  return result;
}

}  // namespace vqdyn
