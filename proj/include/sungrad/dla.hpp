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

#pragma once

#include <random>
#include <string>
#include <vector>

#include "sungrad/gate.hpp"
#include "sungrad/pauli.hpp"

namespace sungrad {

/// Real Lie algebra spanned by Pauli strings, closed under commutation.
struct DLA {
  std::vector<PauliString> basis;       // sorted
  std::vector<PauliString> generators;  // as given, deduplicated

  std::size_t dim() const { return basis.size(); }
  bool contains(const PauliString& p) const;
  bool is_abelian() const;
};

DLA dla_closure(const std::vector<PauliString>& generators);

inline constexpr std::size_t kMaxCartanSearchDim = 63;

/// Size of a maximum mutually commuting subset of the basis (exact search).
/// Throws ResourceError above kMaxCartanSearchDim.
std::size_t cartan_dimension(const DLA& d);

/// One maximum commuting subset, sorted.
std::vector<PauliString> cartan_basis(const DLA& d);

struct RootData {
  int dim_g = 0;
  int dim_h = 0;
  int n_roots = 0;
  int gap_bound = 0;
};

/// Throws ConsistencyError if dim_g - dim_h is odd.
RootData root_count(const DLA& d);

/// "table" when the closure is one of the tabulated reference algebras
/// (su(2) on one qubit, the two-qubit transverse-field Ising so(4), su(4)),
/// "heuristic" otherwise.
std::string cartan_label(const DLA& d);

struct GapBoundReport {
  DLA dla;
  RootData roots;
  std::string label;
  int samples = 0;
  std::vector<int> max_gaps;  // per parameter l
  int violations = 0;
  std::vector<double> offending_theta;  // first violation, empty if none
  bool passed() const { return violations == 0; }
};

/// Draws n_samples parameter vectors (standard-normal direction, norm uniform
/// in (0, 2]) and checks the number of unique gaps of every Omega_l against
/// the root-count bound of the gate's closure.
GapBoundReport verify_gap_bound(const SUNGate& gate, int n_samples, std::mt19937_64& rng);

}  // namespace sungrad
