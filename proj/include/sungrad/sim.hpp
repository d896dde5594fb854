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

#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "sungrad/gate.hpp"
#include "sungrad/linalg.hpp"

namespace sungrad {

/// A parameter-free unitary on an ordered set of qubits.
struct FixedGate {
  ComplexMatrix unitary;
  std::vector<int> support;
};

using Operation = std::variant<SUNGate, ProductGate, FixedGate>;

const std::vector<int>& operation_support(const Operation& op);
ComplexMatrix operation_unitary(const Operation& op);
std::size_t operation_parameter_count(const Operation& op);

/// Ordered gate list on n qubits. Qubit 0 is the most significant bit of a
/// basis-state index.
struct Circuit {
  explicit Circuit(int n_qubits);

  int n_qubits;
  std::vector<Operation> gates;

  /// Validates the support against the register, then appends.
  Circuit& add(Operation op);

  /// Flattened parameters of every gate in order.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> values);
  std::size_t parameter_count() const;
};

/// Concatenation c1 then c2.
Circuit concatenate(const Circuit& first, const Circuit& second);

/// Normalized amplitudes over 2^n basis states.
class StateVector {
 public:
  /// Throws std::invalid_argument if the length is not a power of two or the
  /// norm differs from 1 by more than 1e-10.
  explicit StateVector(ComplexVector amplitudes);
  static StateVector zero(int n_qubits);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
  int n_qubits_;
};

/// Hermitian operator on the full register. The eigendecomposition used for
/// shot sampling is computed on first use and shared between copies.
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix);
  static Observable from_paulis(const std::vector<PauliTerm>& terms);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const HermitianEig& spectrum() const;

 private:
  struct SpectrumCache {
    std::once_flag once;
    HermitianEig eig;
  };
  ComplexMatrix matrix_;
  std::shared_ptr<SpectrumCache> cache_;
};

/// Applies a 2^k x 2^k matrix to the k support qubits in place. The matrix
/// need not be unitary.
void apply_matrix(ComplexVector& amplitudes, int n_qubits, const ComplexMatrix& m,
                  std::span<const int> support);

/// Applies gates[begin, end) of the circuit, no normalization checks.
void apply_gates(ComplexVector& amplitudes, const Circuit& c, std::size_t begin,
                 std::size_t end);

StateVector run_circuit(const Circuit& c, const StateVector& initial);

/// <psi|H|psi>; throws on dimension mismatch or imaginary residue > 1e-10.
double expectation(const StateVector& state, const Observable& h);

/// Sample mean and unbiased sample variance of eigenvalue outcomes.
struct ShotStatistics {
  double mean = 0.0;
  double variance = 0.0;
  int shots = 0;
};
ShotStatistics sample_observable(const StateVector& state, const Observable& h, int shots,
                                 std::mt19937_64& rng);

/// Mean of `shots` eigenvalue outcomes drawn with Born probabilities.
double sampled_expectation(const StateVector& state, const Observable& h, int shots,
                           std::mt19937_64& rng);

}  // namespace sungrad
