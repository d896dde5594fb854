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

#include "sungrad/dla.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "sungrad/error.hpp"
#include "sungrad/grad.hpp"

namespace sungrad {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> commutation_graph(const std::vector<PauliString>& basis) {
  std::vector<Mask> adj(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i != j && basis[i].commutes_with(basis[j])) adj[i] |= Mask{1} << j;
    }
  }
  return adj;
}

struct CliqueSearch {
  const std::vector<Mask>& adj;
  Mask best = 0;
  int best_size = 0;

  void expand(Mask clique, int size, Mask candidates) {
    if (candidates == 0) {
      if (size > best_size) {
        best_size = size;
        best = clique;
      }
      return;
    }
    while (candidates != 0) {
      if (size + std::popcount(candidates) <= best_size) return;
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      expand(clique | (Mask{1} << v), size + 1, candidates & adj[static_cast<std::size_t>(v)]);
    }
  }
};

Mask max_commuting_subset(const DLA& d) {
  if (d.dim() > kMaxCartanSearchDim) {
    throw ResourceError("cartan_dimension: algebra dimension " + std::to_string(d.dim()) +
                        " exceeds the exact search limit of " +
                        std::to_string(kMaxCartanSearchDim) + "; use a greedy commuting set");
  }
  const auto adj = commutation_graph(d.basis);
  CliqueSearch search{adj};
  const Mask all = d.dim() == 64 ? ~Mask{0} : (Mask{1} << d.dim()) - 1;
  search.expand(0, 0, all);
  return search.best;
}

std::vector<PauliString> parse_all(std::initializer_list<const char*> labels) {
  std::vector<PauliString> out;
  for (const char* s : labels) out.push_back(PauliString::parse(s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool DLA::contains(const PauliString& p) const {
  return std::binary_search(basis.begin(), basis.end(), p);
}

bool DLA::is_abelian() const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!basis[i].commutes_with(basis[j])) return false;
    }
  }
  return true;
}

DLA dla_closure(const std::vector<PauliString>& generators) {
  if (generators.empty()) throw std::invalid_argument("dla_closure: no generators");
  const int n = generators.front().n_qubits();
  for (const auto& g : generators) {
    if (g.n_qubits() != n) throw std::invalid_argument("dla_closure: mixed qubit counts");
    if (g.is_identity()) throw std::invalid_argument("dla_closure: identity generator");
  }
  DLA d;
  std::unordered_set<PauliString> seen;
  std::vector<PauliString> elements;
  std::deque<std::size_t> queue;
  for (const auto& g : generators) {
    if (seen.insert(g).second) {
      d.generators.push_back(g);
      elements.push_back(g);
      queue.push_back(elements.size() - 1);
    }
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const PauliString a = elements[i];
      const PauliString& b = elements[j];
      if (a.commutes_with(b)) continue;
      PauliString c = pauli_product(a, b).string;
      if (seen.insert(c).second) {
        elements.push_back(c);
        queue.push_back(elements.size() - 1);
      }
    }
  }
  d.basis = std::move(elements);
  std::sort(d.basis.begin(), d.basis.end());
  return d;
}

std::size_t cartan_dimension(const DLA& d) {
  return static_cast<std::size_t>(std::popcount(max_commuting_subset(d)));
}

std::vector<PauliString> cartan_basis(const DLA& d) {
  const Mask m = max_commuting_subset(d);
  std::vector<PauliString> out;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    if ((m >> i) & 1U) out.push_back(d.basis[i]);
  }
  return out;
}

RootData root_count(const DLA& d) {
  RootData r;
  r.dim_g = static_cast<int>(d.dim());
  r.dim_h = static_cast<int>(cartan_dimension(d));
  r.n_roots = r.dim_g - r.dim_h;
  if (r.n_roots % 2 != 0) {
    throw ConsistencyError("root_count: odd number of roots (" + std::to_string(r.n_roots) +
                           "); the commuting set is not a Cartan subalgebra");
  }
  r.gap_bound = r.n_roots / 2;
  return r;
}

std::string cartan_label(const DLA& d) {
  static const std::vector<std::vector<PauliString>> reference = [] {
    std::vector<std::vector<PauliString>> refs;
    refs.push_back(parse_all({"X", "Y", "Z"}));
    refs.push_back(parse_all({"XI", "IX", "YY", "ZZ", "ZY", "YZ"}));
    refs.push_back(enumerate_basis(2));
    return refs;
  }();
  for (const auto& ref : reference) {
    if (ref == d.basis) return "table";
  }
  return "heuristic";
}

GapBoundReport verify_gap_bound(const SUNGate& gate, int n_samples, std::mt19937_64& rng) {
  if (n_samples < 1) throw std::invalid_argument("verify_gap_bound: need >= 1 sample");
  GapBoundReport report;
  report.dla = dla_closure(gate.generator.basis());
  report.roots = root_count(report.dla);
  report.label = cartan_label(report.dla);
  report.samples = n_samples;
  const std::size_t k = gate.generator.size();
  report.max_gaps.assign(k, 0);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SUNGate g = gate;
  std::vector<double> theta(k);
  for (int s = 0; s < n_samples; ++s) {
    double norm2 = 0.0;
    for (auto& t : theta) {
      t = normal(rng);
      norm2 += t * t;
    }
    const double radius = 2.0 * (1.0 - unit(rng));  // (0, 2]
    const double scale = norm2 > 0.0 ? radius / std::sqrt(norm2) : 0.0;
    for (auto& t : theta) t *= scale;
    g.generator.set_coefficients(theta);
    const auto omegas = effective_generators(g);
    bool violated = false;
    for (std::size_t l = 0; l < k; ++l) {
      const int r = static_cast<int>(spectral_gaps(omegas[l]).count());
      report.max_gaps[l] = std::max(report.max_gaps[l], r);
      if (r > report.roots.gap_bound) violated = true;
    }
    if (violated) {
      if (report.violations == 0) report.offending_theta = theta;
      ++report.violations;
    }
  }
  return report;
}

}  // namespace sungrad
