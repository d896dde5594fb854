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

#include <array>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "sungrad/linalg.hpp"
#include "sungrad/pauli.hpp"

namespace sungrad {

/// Real coordinates over a set of Pauli strings: A = i * sum_m theta_m P_m.
///
/// The basis is fixed at construction (pairwise distinct, identity-free,
/// equal qubit counts); the coefficients may be replaced.
class AlgebraElement {
 public:
  AlgebraElement(std::vector<PauliString> basis, std::vector<double> coefficients);

  /// Every non-identity string on n qubits with zero coordinates.
  static AlgebraElement full(int n_qubits);

  const std::vector<PauliString>& basis() const { return basis_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  void set_coefficients(std::span<const double> values);
  void set_coefficient(std::size_t index, double value);

  int n_qubits() const { return basis_.front().n_qubits(); }
  std::size_t size() const { return basis_.size(); }
  double norm() const;

  /// Dense P_m, cached and shared between copies.
  const ComplexMatrix& basis_matrix(std::size_t index) const { return (*dense_basis_)[index]; }

  /// i * sum_m theta_m P_m.
  ComplexMatrix dense() const;

 private:
  std::vector<PauliString> basis_;
  std::vector<double> coefficients_;
  std::shared_ptr<const std::vector<ComplexMatrix>> dense_basis_;
};

/// exp(A(theta)) acting on an ordered set of qubits.
struct SUNGate {
  SUNGate(AlgebraElement generator, std::vector<int> qubit_support);

  AlgebraElement generator;
  std::vector<int> support;
};

/// Omega_l = U^dagger dU/dtheta_l, skew-Hermitian.
struct EffectiveGenerator {
  ComplexMatrix matrix;
  std::size_t parameter_index = 0;
};

ComplexMatrix assemble_generator(const SUNGate& gate);
ComplexMatrix gate_unitary(const SUNGate& gate);

/// Omega_l through the Fréchet derivative of exp at A(theta) along i P_l.
EffectiveGenerator effective_generator(const SUNGate& gate, std::size_t l);

/// All Omega_l of a gate, sharing one exponential.
std::vector<EffectiveGenerator> effective_generators(const SUNGate& gate);

/// Partial sum over p = 0..p_max of (-1)^p / (p+1)! ad_A^p (i P_l).
ComplexMatrix effective_generator_series(const SUNGate& gate, std::size_t l, int p_max);

/// i * sum_m (theta_m / |theta|) P_m. Throws std::invalid_argument at theta = 0.
ComplexMatrix normalized_generator(const SUNGate& gate);

/// exp(Abar t) with Abar normalized to unit Euclidean coordinate norm, so
/// Tr(Abar^dagger Abar) = N.
ComplexMatrix timed_evolution(const SUNGate& gate, double t);

/// exp(i angle P) = cos(angle) I + i sin(angle) P.
ComplexMatrix pauli_rotation(const PauliString& axis, double angle);

/// R_Z(t3) R_Y(t2) R_Z(t1) with R_A(t) = exp(i t A).
ComplexMatrix zyz_unitary(double t1, double t2, double t3);

/// phi with exp(i phi . (X, Y, Z)) = zyz_unitary(t1, t2, t3).
std::array<double, 3> zyz_to_canonical(double t1, double t2, double t3);

/// Real c with omega = i sum_m c_m P_m over the given basis.
struct PauliDecomposition {
  std::vector<double> coefficients;
  double residual = 0.0;       // ||omega - i sum c_m P_m||_F
  double max_imaginary = 0.0;  // largest discarded imaginary part
};
PauliDecomposition pauli_decompose(const ComplexMatrix& omega,
                                   const std::vector<PauliString>& basis);

/// Coefficients over the full Pauli basis of the generator's qubit count.
/// Throws std::invalid_argument for non-skew-Hermitian input.
std::vector<double> pauli_decompose_generator(const EffectiveGenerator& omega);

/// One factor of a product-of-exponentials gate.
struct RotationStep {
  PauliString axis;
  std::size_t parameter;  // exp(i params[parameter] axis)
};
struct FixedStep {
  ComplexMatrix matrix;
};
using ProductStep = std::variant<RotationStep, FixedStep>;

/// Ordered product of rotations and fixed matrices; steps[0] acts first.
struct ProductGate {
  std::vector<int> support;
  std::vector<ProductStep> steps;
  std::vector<double> params;
};

ComplexMatrix product_unitary(const ProductGate& gate);

/// dU/dp_k for every parameter k.
std::vector<ComplexMatrix> product_derivatives(const ProductGate& gate);

/// ZYZ rotation on one qubit; params (t1, t2, t3) as in zyz_unitary.
ProductGate zyz_gate(int qubit, std::array<double, 3> params);

/// Decomposed two-qubit gate: local ZYZ layer, exp(i(a XX + b YY + c ZZ)),
/// local ZYZ layer. Parameter layout: [0,3) qubit-a ZYZ, [3,6) qubit-b ZYZ,
/// [6,9) entangler (a, b, c), [9,12) qubit-a ZYZ, [12,15) qubit-b ZYZ.
ProductGate su4_decomposed_gate(int qubit_a, int qubit_b, std::span<const double> params);

ComplexMatrix su4_decomposed_unitary(std::span<const double> params);

/// CNOT with the first qubit as control, in the two-qubit local space.
ComplexMatrix cnot_matrix();

}  // namespace sungrad
