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

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqdyn/pauli.hpp"

namespace vqdyn {

enum class PoolKind { local, non_local, custom };

inline const char* pool_kind_name(PoolKind kind) {
  switch (kind) {
    case PoolKind::local: return "local";
    case PoolKind::non_local: return "non_local";
    case PoolKind::custom: return "custom";
  }
  return "?";
}

/// Candidate generators for adaptive circuit growth. Operator order is
/// deterministic and doubles as the tie-break order during gate selection:
/// single-site operators by (site, X<Y<Z), then pairs by (i, j, letter).
struct OperatorPool {
  int num_qubits = 0;
  std::vector<PauliString> operators;
  PoolKind kind = PoolKind::custom;

  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }
};

namespace detail {

inline void append_singles(OperatorPool& pool) {
  for (int i = 0; i < pool.num_qubits; ++i) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      pool.operators.push_back(PauliString::single(pool.num_qubits, i, p));
    }
  }
}

}  // namespace detail

/// All single-site Paulis plus same-letter nearest-neighbor pairs; 6N-3
/// operators on N qubits.
inline OperatorPool local_pool(int num_qubits) {
  if (num_qubits < 2) throw std::invalid_argument("local_pool: need at least 2 qubits");
  OperatorPool pool{num_qubits, {}, PoolKind::local};
  detail::append_singles(pool);
  for (int i = 0; i + 1 < num_qubits; ++i) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      pool.operators.push_back(PauliString::two(num_qubits, i, p, i + 1, p));
    }
  }
  return pool;
}

/// All single-site Paulis plus same-letter pairs on every i < j;
/// 3N + 3N(N-1)/2 operators. Superset of the local pool.
inline OperatorPool non_local_pool(int num_qubits) {
  if (num_qubits < 2) throw std::invalid_argument("non_local_pool: need at least 2 qubits");
  OperatorPool pool{num_qubits, {}, PoolKind::non_local};
  detail::append_singles(pool);
  for (int i = 0; i < num_qubits; ++i) {
    for (int j = i + 1; j < num_qubits; ++j) {
      for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        pool.operators.push_back(PauliString::two(num_qubits, i, p, j, p));
      }
    }
  }
  return pool;
}

/// Pool built from letter strings such as "XXII". Operators must be distinct,
/// non-identity and of weight 1 or 2.
inline OperatorPool custom_pool(int num_qubits, const std::vector<std::string>& letter_strings) {
  if (letter_strings.empty()) throw std::invalid_argument("custom_pool: empty operator list");
  OperatorPool pool{num_qubits, {}, PoolKind::custom};
  std::set<PauliString> seen;
  for (const auto& text : letter_strings) {
    PauliString op = PauliString::parse(text);
    if (op.num_qubits() != num_qubits) {
      throw std::invalid_argument("custom_pool: operator '" + text + "' has wrong qubit count");
    }
    const int w = op.weight();
    if (w < 1 || w > 2) {
      throw std::invalid_argument("custom_pool: operator '" + text + "' must have weight 1 or 2");
    }
    if (!seen.insert(op).second) {
      throw std::invalid_argument("custom_pool: duplicate operator '" + text + "'");
    }
    pool.operators.push_back(std::move(op));
  }
  return pool;
}

/// Removes every operator whose support intersects the occupied qubit set.
inline OperatorPool remove_overlapping(const OperatorPool& pool, std::uint64_t occupied_mask) {
  OperatorPool filtered{pool.num_qubits, {}, pool.kind};
  for (const auto& op : pool.operators) {
    if ((op.support_mask() & occupied_mask) == 0) filtered.operators.push_back(op);
  }
  return filtered;
}

inline OperatorPool remove_overlapping(const OperatorPool& pool, const std::set<int>& occupied) {
  std::uint64_t mask = 0;
  for (int q : occupied) {
    if (q < 0 || q >= 64) throw std::out_of_range("remove_overlapping: qubit index out of range");
    mask |= std::uint64_t{1} << q;
  }
  return remove_overlapping(pool, mask);
}

}  // namespace vqdyn
