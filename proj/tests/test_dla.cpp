// Copyright 2026 The sungrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sungrad/dla.hpp"
#include "sungrad/error.hpp"

using namespace sungrad;

namespace {

SUNGate gate_on(const std::string& gens) {
  const auto basis = parse_pauli_list(gens);
  std::vector<int> support(static_cast<std::size_t>(basis.front().n_qubits()));
  for (std::size_t q = 0; q < support.size(); ++q) support[q] = static_cast<int>(q);
  return SUNGate(AlgebraElement(basis, std::vector<double>(basis.size(), 0.0)), support);
}

}  // namespace

TEST(Closure, Su2FromTwoGenerators) {
  const DLA d = dla_closure(parse_pauli_list("X,Y"));
  EXPECT_EQ(format_pauli_list(d.basis), "X,Y,Z");
  EXPECT_EQ(d.generators.size(), 2u);
}

TEST(Closure, TransverseFieldIsing) {
  const DLA d = dla_closure(parse_pauli_list("XI,IX,ZZ"));
  auto expect = parse_pauli_list("XI,IX,YY,ZZ,ZY,YZ");
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(d.basis, expect);
}

TEST(Closure, FullTwoQubitBasis) {
  EXPECT_EQ(dla_closure(enumerate_basis(2)).dim(), 15u);
}

TEST(Closure, ClosedUnderCommutators) {
  std::mt19937_64 rng(1);
  const auto all = enumerate_basis(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PauliString> gens;
    std::sample(all.begin(), all.end(), std::back_inserter(gens), 3, rng);
    const DLA d = dla_closure(gens);
    for (const auto& a : d.basis) {
      for (const auto& b : d.basis) {
        if (const auto c = pauli_commutator(a, b)) {
          EXPECT_TRUE(d.contains(c->string));
        }
      }
    }
    for (const auto& g : gens) EXPECT_TRUE(d.contains(g));
  }
}

TEST(Closure, Idempotent) {
  const DLA d = dla_closure(parse_pauli_list("XIZ,IYI,ZZX"));
  EXPECT_EQ(dla_closure(d.basis).basis, d.basis);
}

TEST(Closure, Monotone) {
  std::mt19937_64 rng(2);
  const auto all = enumerate_basis(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PauliString> big;
    std::sample(all.begin(), all.end(), std::back_inserter(big), 4, rng);
    const std::vector<PauliString> small(big.begin(), big.begin() + 2);
    const DLA ds = dla_closure(small), db = dla_closure(big);
    for (const auto& p : ds.basis) EXPECT_TRUE(db.contains(p));
  }
}

TEST(Closure, Validation) {
  EXPECT_THROW(dla_closure({}), std::invalid_argument);
  EXPECT_THROW(dla_closure(parse_pauli_list("II,XI")), std::invalid_argument);
  EXPECT_THROW(dla_closure({PauliString::parse("X"), PauliString::parse("XX")}), std::invalid_argument);
}

TEST(Cartan, TableDimensions) {
  EXPECT_EQ(cartan_dimension(dla_closure(parse_pauli_list("X,Y"))), 1u);
  EXPECT_EQ(cartan_dimension(dla_closure(parse_pauli_list("XI,IX,ZZ"))), 2u);
  EXPECT_EQ(cartan_dimension(dla_closure(enumerate_basis(2))), 3u);
  EXPECT_EQ(cartan_dimension(dla_closure(enumerate_basis(3))), 7u);
}

TEST(Cartan, BasisIsCommuting) {
  const auto h = cartan_basis(dla_closure(enumerate_basis(2)));
  ASSERT_EQ(h.size(), 3u);
  for (const auto& a : h)
    for (const auto& b : h) EXPECT_TRUE(a.commutes_with(b));
}

TEST(Cartan, SearchBudget) {
  EXPECT_THROW(cartan_dimension(dla_closure(enumerate_basis(4))), ResourceError);
}

TEST(RootCount, TableRows) {
  const auto check = [](const std::vector<PauliString>& gens, int g, int h, int roots, int bound) {
    const RootData r = root_count(dla_closure(gens));
    EXPECT_EQ(r.dim_g, g);
    EXPECT_EQ(r.dim_h, h);
    EXPECT_EQ(r.n_roots, roots);
    EXPECT_EQ(r.gap_bound, bound);
  };
  check(parse_pauli_list("X,Y"), 3, 1, 2, 1);
  check(parse_pauli_list("XI,IX,ZZ"), 6, 2, 4, 2);
  check(enumerate_basis(2), 15, 3, 12, 6);
}

TEST(RootCount, Labels) {
  EXPECT_EQ(cartan_label(dla_closure(parse_pauli_list("X,Y"))), "table");
  EXPECT_EQ(cartan_label(dla_closure(parse_pauli_list("IX,XI,ZZ"))), "table");
  EXPECT_EQ(cartan_label(dla_closure(enumerate_basis(2))), "table");
  EXPECT_EQ(cartan_label(dla_closure(parse_pauli_list("XX,ZZ,XZ"))), "heuristic");
}

TEST(RootCount, AbelianClosure) {
  const DLA d = dla_closure(parse_pauli_list("ZI,IZ"));
  EXPECT_TRUE(d.is_abelian());
  EXPECT_EQ(root_count(d).n_roots, 0);
  EXPECT_FALSE(dla_closure(parse_pauli_list("X,Y")).is_abelian());
}

TEST(GapBound, FullAlgebraGatesSatisfyBound) {
  std::mt19937_64 rng(3);
  const GapBoundReport su2 = verify_gap_bound(gate_on("X,Y"), 200, rng);
  EXPECT_TRUE(su2.passed());
  EXPECT_EQ(*std::max_element(su2.max_gaps.begin(), su2.max_gaps.end()), 1);
  const GapBoundReport su4 = verify_gap_bound(gate_on(format_pauli_list(enumerate_basis(2))), 200, rng);
  EXPECT_TRUE(su4.passed());
  EXPECT_EQ(*std::max_element(su4.max_gaps.begin(), su4.max_gaps.end()), 6);
  EXPECT_EQ(su4.roots.gap_bound, 6);
  EXPECT_TRUE(su4.offending_theta.empty());
}

TEST(GapBound, IsingGateExceedsRootCount) {
  // so(4) acts on C^4 with eigenvalues +-s1 +-s2, so Omega_l has the four gaps
  // 2 s1, 2 s2, 2(s1 + s2), 2|s1 - s2| while the root count allows two.
  std::mt19937_64 rng(4);
  const GapBoundReport tfim = verify_gap_bound(gate_on("XI,IX,ZZ"), 200, rng);
  EXPECT_EQ(tfim.roots.gap_bound, 2);
  EXPECT_FALSE(tfim.passed());
  EXPECT_EQ(*std::max_element(tfim.max_gaps.begin(), tfim.max_gaps.end()), 4);
  EXPECT_EQ(tfim.offending_theta.size(), 3u);
}

TEST(GapBound, OtherClosuresWithinBound) {
  std::mt19937_64 rng(5);
  for (const char* gens : {"XI,ZI,IX,IZ,XX", "XI,YI,IX,ZZ"}) {
    const GapBoundReport r = verify_gap_bound(gate_on(gens), 50, rng);
    EXPECT_TRUE(r.passed()) << gens;
  }
  EXPECT_EQ(dla_closure(parse_pauli_list("XI,YI,IX,ZZ")).dim(), 10u);
}
