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

#include "sungrad/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace sungrad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const std::vector<int>& operation_support(const Operation& op) {
  return std::visit([](const auto& g) -> const std::vector<int>& { return g.support; }, op);
}

ComplexMatrix operation_unitary(const Operation& op) {
  return std::visit(Overloaded{
                        [](const SUNGate& g) { return gate_unitary(g); },
                        [](const ProductGate& g) { return product_unitary(g); },
                        [](const FixedGate& g) { return g.unitary; },
                    },
                    op);
}

std::size_t operation_parameter_count(const Operation& op) {
  return std::visit(Overloaded{
                        [](const SUNGate& g) { return g.generator.size(); },
                        [](const ProductGate& g) { return g.params.size(); },
                        [](const FixedGate&) { return std::size_t{0}; },
                    },
                    op);
}

Circuit::Circuit(int n) : n_qubits(n) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw std::invalid_argument("Circuit: n_qubits must be in [1, " +
                                std::to_string(kMaxDenseQubits) + "]");
  }
}

Circuit& Circuit::add(Operation op) {
  const auto& support = operation_support(op);
  std::set<int> seen;
  for (int q : support) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("gate support qubit " + std::to_string(q) +
                                  " outside register of " + std::to_string(n_qubits));
    }
    if (!seen.insert(q).second) throw std::invalid_argument("repeated qubit in gate support");
  }
  if (support.empty()) throw std::invalid_argument("gate with empty support");
  if (const auto* f = std::get_if<FixedGate>(&op)) {
    const Eigen::Index dim = Eigen::Index{1} << support.size();
    if (f->unitary.rows() != dim || f->unitary.cols() != dim) {
      throw std::invalid_argument("fixed gate matrix does not match its support");
    }
  }
  if (const auto* p = std::get_if<ProductGate>(&op)) {
    for (const auto& step : p->steps) {
      if (const auto* r = std::get_if<RotationStep>(&step)) {
        if (r->axis.n_qubits() != static_cast<int>(support.size()) ||
            r->parameter >= p->params.size()) {
          throw std::invalid_argument("malformed product gate step");
        }
      }
    }
  }
  gates.push_back(std::move(op));
  return *this;
}

std::vector<double> Circuit::parameters() const {
  std::vector<double> out;
  for (const auto& op : gates) {
    if (const auto* s = std::get_if<SUNGate>(&op)) {
      const auto& c = s->generator.coefficients();
      out.insert(out.end(), c.begin(), c.end());
    } else if (const auto* p = std::get_if<ProductGate>(&op)) {
      out.insert(out.end(), p->params.begin(), p->params.end());
    }
  }
  return out;
}

std::size_t Circuit::parameter_count() const {
  std::size_t n = 0;
  for (const auto& op : gates) n += operation_parameter_count(op);
  return n;
}

void Circuit::set_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw std::invalid_argument("Circuit::set_parameters: expected " +
                                std::to_string(parameter_count()) + " values, got " +
                                std::to_string(values.size()));
  }
  std::size_t offset = 0;
  for (auto& op : gates) {
    const std::size_t k = operation_parameter_count(op);
    if (auto* s = std::get_if<SUNGate>(&op)) {
      s->generator.set_coefficients(values.subspan(offset, k));
    } else if (auto* p = std::get_if<ProductGate>(&op)) {
      std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(offset), k, p->params.begin());
    }
    offset += k;
  }
}

Circuit concatenate(const Circuit& first, const Circuit& second) {
  if (first.n_qubits != second.n_qubits) {
    throw std::invalid_argument("concatenate: register sizes differ");
  }
  Circuit out = first;
  for (const auto& op : second.gates) out.gates.push_back(op);
  return out;
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const Eigen::Index d = amplitudes_.size();
  if (d < 2 || (d & (d - 1)) != 0) {
    throw std::invalid_argument("StateVector: length must be a power of two >= 2");
  }
  n_qubits_ = 0;
  while ((Eigen::Index{1} << n_qubits_) < d) ++n_qubits_;
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("StateVector::zero: bad qubit count");
  }
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  v(0) = 1.0;
  return StateVector(std::move(v));
}

Observable::Observable(ComplexMatrix matrix)
    : matrix_(std::move(matrix)), cache_(std::make_shared<SpectrumCache>()) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("Observable: not square");
  const double res = hermitian_residual(matrix_);
  if (res > 1e-10 * std::max(1.0, matrix_.norm())) {
    throw std::invalid_argument("Observable: matrix is not Hermitian");
  }
}

Observable Observable::from_paulis(const std::vector<PauliTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("Observable::from_paulis: no terms");
  const Eigen::Index dim = Eigen::Index{1} << terms.front().string.n_qubits();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.coefficient.imag() != 0.0) {
      throw std::invalid_argument("Observable::from_paulis: coefficients must be real");
    }
    m += t.coefficient * pauli_matrix(t.string);
  }
  return Observable(std::move(m));
}

const HermitianEig& Observable::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->eig = hermitian_eig(matrix_); });
  return cache_->eig;
}

void apply_matrix(ComplexVector& amplitudes, int n_qubits, const ComplexMatrix& m,
                  std::span<const int> support) {
  const int k = static_cast<int>(support.size());
  const Eigen::Index local = Eigen::Index{1} << k;
  if (m.rows() != local || m.cols() != local) {
    throw std::invalid_argument("apply_matrix: matrix does not match support size");
  }
  // Bit position (from the least significant end) of each support qubit;
  // support[0] is the most significant bit of the local index.
  std::vector<std::uint64_t> bit(static_cast<std::size_t>(k));
  std::uint64_t support_mask = 0;
  for (int j = 0; j < k; ++j) {
    const int q = support[static_cast<std::size_t>(j)];
    if (q < 0 || q >= n_qubits) throw std::invalid_argument("apply_matrix: qubit out of range");
    bit[static_cast<std::size_t>(j)] = 1ULL << (n_qubits - 1 - q);
    support_mask |= bit[static_cast<std::size_t>(j)];
  }
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(local));
  for (Eigen::Index li = 0; li < local; ++li) {
    std::uint64_t off = 0;
    for (int j = 0; j < k; ++j) {
      if ((static_cast<std::uint64_t>(li) >> (k - 1 - j)) & 1ULL) off |= bit[static_cast<std::size_t>(j)];
    }
    offsets[static_cast<std::size_t>(li)] = off;
  }
  ComplexVector in(local);
  ComplexVector out(local);
  const std::uint64_t dim = 1ULL << n_qubits;
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & support_mask) continue;
    for (Eigen::Index li = 0; li < local; ++li) in(li) = amplitudes(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(li)]));
    out.noalias() = m * in;
    for (Eigen::Index li = 0; li < local; ++li) amplitudes(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(li)])) = out(li);
  }
}

void apply_gates(ComplexVector& amplitudes, const Circuit& c, std::size_t begin,
                 std::size_t end) {
  for (std::size_t g = begin; g < end; ++g) {
    apply_matrix(amplitudes, c.n_qubits, operation_unitary(c.gates[g]),
                 operation_support(c.gates[g]));
  }
}

StateVector run_circuit(const Circuit& c, const StateVector& initial) {
  if (initial.n_qubits() != c.n_qubits) {
    throw std::invalid_argument("run_circuit: state has " + std::to_string(initial.n_qubits()) +
                                " qubits, circuit has " + std::to_string(c.n_qubits));
  }
  ComplexVector psi = initial.amplitudes();
  apply_gates(psi, c, 0, c.gates.size());
  // Gates are unitary up to rounding; renormalize so the result satisfies the
  // StateVector invariant exactly.
  psi /= psi.norm();
  return StateVector(std::move(psi));
}

double expectation(const StateVector& state, const Observable& h) {
  if (state.dim() != h.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  const Complex v = state.amplitudes().dot(h.matrix() * state.amplitudes());
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw std::runtime_error("expectation: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

ShotStatistics sample_observable(const StateVector& state, const Observable& h, int shots,
                                 std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("sample_observable: shots must be >= 1");
  if (state.dim() != h.dim()) throw std::invalid_argument("sample_observable: dimension mismatch");
  const HermitianEig& eig = h.spectrum();
  const ComplexVector overlaps = eig.eigenvectors.adjoint() * state.amplitudes();
  std::vector<double> probs(static_cast<std::size_t>(overlaps.size()));
  for (Eigen::Index k = 0; k < overlaps.size(); ++k) probs[static_cast<std::size_t>(k)] = std::norm(overlaps(k));
  std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
  // Welford accumulation
  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < shots; ++s) {
    const double x = eig.eigenvalues(static_cast<Eigen::Index>(outcome(rng)));
    const double delta = x - mean;
    mean += delta / (s + 1);
    m2 += delta * (x - mean);
  }
  return {mean, shots > 1 ? m2 / (shots - 1) : 0.0, shots};
}

double sampled_expectation(const StateVector& state, const Observable& h, int shots,
                           std::mt19937_64& rng) {
  return sample_observable(state, h, shots, rng).mean;
}

}  // namespace sungrad
