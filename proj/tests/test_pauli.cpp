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

#include "vqdyn/pauli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace vqdyn;

namespace {

// Every Pauli string on n qubits, in lexicographic letter order.
std::vector<PauliString> all_strings(int n) {
  std::vector<PauliString> out;
  const int total = 1 << (2 * n);
  for (int code = 0; code < total; ++code) {
    std::vector<Pauli> letters;
    int c = code;
    for (int q = 0; q < n; ++q) {
      letters.push_back(static_cast<Pauli>(c % 4));
      c /= 4;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

}  // namespace

TEST_CASE("support reads off non-identity positions") {
  REQUIRE(PauliString::parse("XIIZ").support() == std::vector<int>{0, 3});
  REQUIRE(PauliString::parse("IIII").support().empty());
  REQUIRE(PauliString::parse("XX").support() == std::vector<int>{0, 1});
}

TEST_CASE("weight and support_mask agree with support") {
  REQUIRE(PauliString::parse("XIIZ").weight() == 2);
  REQUIRE(PauliString::parse("XIIZ").support_mask() == 0b1001ULL);
  REQUIRE(PauliString::parse("IIII").is_identity());
  REQUIRE(PauliString::parse("IYI").weight() == 1);
}

TEST_CASE("parse accepts only I X Y Z and round-trips") {
  REQUIRE(PauliString::parse("XYZI").str() == "XYZI");
  REQUIRE_THROWS_AS(PauliString::parse("XA"), std::invalid_argument);
  REQUIRE_THROWS_AS(PauliString::parse("x"), std::invalid_argument);
  REQUIRE_THROWS_AS(PauliString::parse(""), std::invalid_argument);
}

TEST_CASE("commutes on simple pairs") {
  REQUIRE(commutes(PauliString::parse("ZI"), PauliString::parse("IZ")));
  REQUIRE_FALSE(commutes(PauliString::parse("X"), PauliString::parse("Z")));
  REQUIRE(commutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
  REQUIRE_THROWS_AS(commutes(PauliString::parse("X"), PauliString::parse("XX")),
                    std::invalid_argument);
}

TEST_CASE("XX and ZZ commute as matrices") {
  const auto p = to_matrix(PauliString::parse("XX"));
  const auto q = to_matrix(PauliString::parse("ZZ"));
  REQUIRE((p * q - q * p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("to_matrix on single letters") {
  REQUIRE(to_matrix(PauliString::parse("I")).isApprox(Eigen::MatrixXcd::Identity(2, 2)));

  Eigen::MatrixXcd z(2, 2);
  z << 1, 0, 0, -1;
  REQUIRE(to_matrix(PauliString::parse("Z")).isApprox(z));
}

TEST_CASE("to_matrix of XZ equals the explicit Kronecker product") {
  Eigen::MatrixXcd expected(4, 4);
  expected << 0, 0, 1, 0,
              0, 0, 0, -1,
              1, 0, 0, 0,
              0, -1, 0, 0;
  REQUIRE(to_matrix(PauliString::parse("XZ")).isApprox(expected));
}

TEST_CASE("to_matrix enforces the oracle cap") {
  REQUIRE_THROWS_AS(to_matrix(PauliString::identity(3), 2), std::length_error);
}

TEST_CASE("every Pauli string is involutory, Hermitian, traceless unless identity") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : all_strings(n)) {
      const auto m = to_matrix(p);
      const auto dim = m.rows();
      REQUIRE((m * m).isApprox(Eigen::MatrixXcd::Identity(dim, dim), 1e-12));
      REQUIRE(m.isApprox(m.adjoint(), 1e-12));
      if (p.is_identity()) {
        REQUIRE(std::abs(m.trace() - std::complex<double>(dim, 0)) < 1e-12);
      } else {
        REQUIRE(std::abs(m.trace()) < 1e-12);
      }
    }
  }
}

TEST_CASE("commutes agrees with the matrix commutator, exhaustively to N=3") {
  for (int n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    for (const auto& p : strings) {
      const auto mp = to_matrix(p);
      for (const auto& q : strings) {
        const auto mq = to_matrix(q);
        const bool vanishes = (mp * mq - mq * mp).cwiseAbs().maxCoeff() < 1e-12;
        REQUIRE(commutes(p, q) == vanishes);
      }
    }
  }
}

TEST_CASE("disjoint supports always commute") {
  for (const auto& p : all_strings(3)) {
    for (const auto& q : all_strings(3)) {
      if ((p.support_mask() & q.support_mask()) == 0) {
        REQUIRE(commutes(p, q));
      }
    }
  }
}
