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

#include "sungrad/gate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace sungrad {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_support(const std::vector<int>& support, int expected) {
  if (static_cast<int>(support.size()) != expected) {
    throw std::invalid_argument("gate support has " + std::to_string(support.size()) +
                                " qubits, generator acts on " + std::to_string(expected));
  }
  std::set<int> seen;
  for (int q : support) {
    if (q < 0) throw std::invalid_argument("negative qubit index in gate support");
    if (!seen.insert(q).second) {
      throw std::invalid_argument("repeated qubit " + std::to_string(q) + " in gate support");
    }
  }
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

}  // namespace

AlgebraElement::AlgebraElement(std::vector<PauliString> basis,
                               std::vector<double> coefficients)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (basis_.empty()) throw std::invalid_argument("AlgebraElement: empty basis");
  if (basis_.size() != coefficients_.size()) {
    throw std::invalid_argument("AlgebraElement: " + std::to_string(basis_.size()) +
                                " basis strings but " +
                                std::to_string(coefficients_.size()) + " coefficients");
  }
  const int n = basis_.front().n_qubits();
  if (n > kMaxDenseQubits) throw std::invalid_argument("AlgebraElement: too many qubits");
  std::set<PauliString> seen;
  auto dense = std::make_shared<std::vector<ComplexMatrix>>();
  dense->reserve(basis_.size());
  for (const auto& p : basis_) {
    if (p.n_qubits() != n) throw std::invalid_argument("AlgebraElement: mixed qubit counts");
    if (p.is_identity()) throw std::invalid_argument("AlgebraElement: identity string in basis");
    if (!seen.insert(p).second) {
      throw std::invalid_argument("AlgebraElement: duplicate basis string " + p.str());
    }
    dense->push_back(pauli_matrix(p));
  }
  dense_basis_ = std::move(dense);
}

AlgebraElement AlgebraElement::full(int n_qubits) {
  auto basis = enumerate_basis(n_qubits);
  std::vector<double> zeros(basis.size(), 0.0);
  return AlgebraElement(std::move(basis), std::move(zeros));
}

void AlgebraElement::set_coefficients(std::span<const double> values) {
  if (values.size() != coefficients_.size()) {
    throw std::invalid_argument("AlgebraElement::set_coefficients: size mismatch");
  }
  coefficients_.assign(values.begin(), values.end());
}

void AlgebraElement::set_coefficient(std::size_t index, double value) {
  coefficients_.at(index) = value;
}

double AlgebraElement::norm() const {
  double s = 0.0;
  for (double c : coefficients_) s += c * c;
  return std::sqrt(s);
}

ComplexMatrix AlgebraElement::dense() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits();
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    if (coefficients_[m] != 0.0) a += (kI * coefficients_[m]) * (*dense_basis_)[m];
  }
  return a;
}

SUNGate::SUNGate(AlgebraElement gen, std::vector<int> qubit_support)
    : generator(std::move(gen)), support(std::move(qubit_support)) {
  check_support(support, generator.n_qubits());
}

ComplexMatrix assemble_generator(const SUNGate& gate) { return gate.generator.dense(); }

ComplexMatrix gate_unitary(const SUNGate& gate) {
  return expm_skew_hermitian(assemble_generator(gate));
}

EffectiveGenerator effective_generator(const SUNGate& gate, std::size_t l) {
  if (l >= gate.generator.size()) {
    throw std::invalid_argument("effective_generator: parameter index " + std::to_string(l) +
                                " out of range (" + std::to_string(gate.generator.size()) +
                                " parameters)");
  }
  const ComplexMatrix a = assemble_generator(gate);
  const ComplexMatrix u = expm_skew_hermitian(a);
  const auto [exp_a, frechet] = expm_frechet(a, kI * gate.generator.basis_matrix(l));
  ComplexMatrix omega = u.adjoint() * frechet;
  return {(omega - omega.adjoint()) * 0.5, l};
}

std::vector<EffectiveGenerator> effective_generators(const SUNGate& gate) {
  const ComplexMatrix a = assemble_generator(gate);
  const ComplexMatrix u_dag = expm_skew_hermitian(a).adjoint();
  std::vector<EffectiveGenerator> out;
  out.reserve(gate.generator.size());
  for (std::size_t l = 0; l < gate.generator.size(); ++l) {
    const auto [exp_a, frechet] = expm_frechet(a, kI * gate.generator.basis_matrix(l));
    ComplexMatrix omega = u_dag * frechet;
    out.push_back({(omega - omega.adjoint()) * 0.5, l});
  }
  return out;
}

ComplexMatrix effective_generator_series(const SUNGate& gate, std::size_t l, int p_max) {
  if (l >= gate.generator.size()) {
    throw std::invalid_argument("effective_generator_series: parameter index out of range");
  }
  if (p_max < 0) throw std::invalid_argument("effective_generator_series: p_max < 0");
  const ComplexMatrix a = assemble_generator(gate);
  ComplexMatrix term = kI * gate.generator.basis_matrix(l);  // ad_A^p (i P_l)
  ComplexMatrix sum = term;
  double factorial = 1.0;  // (p+1)!
  for (int p = 1; p <= p_max; ++p) {
    term = commutator(a, term);
    factorial *= static_cast<double>(p + 1);
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    sum += (sign / factorial) * term;
  }
  return sum;
}

ComplexMatrix normalized_generator(const SUNGate& gate) {
  const double n = gate.generator.norm();
  if (n == 0.0) throw std::invalid_argument("normalized_generator: theta = 0 has no direction");
  return assemble_generator(gate) / n;
}

ComplexMatrix timed_evolution(const SUNGate& gate, double t) {
  return expm_skew_hermitian(normalized_generator(gate) * t);
}

ComplexMatrix pauli_rotation(const PauliString& axis, double angle) {
  const Eigen::Index dim = Eigen::Index{1} << axis.n_qubits();
  return std::cos(angle) * ComplexMatrix::Identity(dim, dim) +
         (kI * std::sin(angle)) * pauli_matrix(axis);
}

ComplexMatrix zyz_unitary(double t1, double t2, double t3) {
  const PauliString z = PauliString::parse("Z");
  const PauliString y = PauliString::parse("Y");
  return pauli_rotation(z, t3) * pauli_rotation(y, t2) * pauli_rotation(z, t1);
}

std::array<double, 3> zyz_to_canonical(double t1, double t2, double t3) {
  // exp(i phi.sigma) = cos|phi| + i sin|phi| phi_hat.sigma, so the product's
  // scalar part is cos|phi| and its vector part is sin|phi| phi_hat.
  const double s2 = std::sin(t2);
  const double c2 = std::cos(t2);
  const std::array<double, 3> v{s2 * std::sin(t3 - t1), s2 * std::cos(t1 - t3),
                                c2 * std::sin(t1 + t3)};
  const double scalar = c2 * std::cos(t1 + t3);
  // |v| = sqrt(1 - scalar^2) without cancellation near |scalar| = 1.
  const double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (s == 0.0) {
    // +I or -I; pick the Z axis for the latter.
    return scalar > 0.0 ? std::array<double, 3>{0.0, 0.0, 0.0}
                        : std::array<double, 3>{0.0, 0.0, M_PI};
  }
  const double scale = std::atan2(s, scalar) / s;
  return {v[0] * scale, v[1] * scale, v[2] * scale};
}

PauliDecomposition pauli_decompose(const ComplexMatrix& omega,
                                   const std::vector<PauliString>& basis) {
  if (basis.empty()) throw std::invalid_argument("pauli_decompose: empty basis");
  const int n = basis.front().n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (omega.rows() != dim || omega.cols() != dim) {
    throw std::invalid_argument("pauli_decompose: matrix does not match basis qubit count");
  }
  PauliDecomposition out;
  out.coefficients.reserve(basis.size());
  ComplexMatrix rebuilt = ComplexMatrix::Zero(dim, dim);
  for (const auto& p : basis) {
    const ComplexMatrix pm = pauli_matrix(p);
    // c = Tr(P omega) / (i N)
    const Complex c = (pm * omega).trace() / (kI * static_cast<double>(dim));
    out.max_imaginary = std::max(out.max_imaginary, std::abs(c.imag()));
    out.coefficients.push_back(c.real());
    rebuilt += (kI * c.real()) * pm;
  }
  out.residual = (omega - rebuilt).norm();
  return out;
}

std::vector<double> pauli_decompose_generator(const EffectiveGenerator& omega) {
  const ComplexMatrix& m = omega.matrix;
  if (m.rows() != m.cols() || m.rows() < 2 || (m.rows() & (m.rows() - 1)) != 0) {
    throw std::invalid_argument("pauli_decompose_generator: dimension is not a power of two");
  }
  if (skew_residual(m) > 1e-8 * std::max(1.0, m.norm())) {
    throw std::invalid_argument("pauli_decompose_generator: input is not skew-Hermitian");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows()) ++n;
  return pauli_decompose(m, enumerate_basis(n)).coefficients;
}

ComplexMatrix product_unitary(const ProductGate& gate) {
  const Eigen::Index dim = Eigen::Index{1} << gate.support.size();
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& step : gate.steps) {
    if (const auto* r = std::get_if<RotationStep>(&step)) {
      u = pauli_rotation(r->axis, gate.params.at(r->parameter)) * u;
    } else {
      u = std::get<FixedStep>(step).matrix * u;
    }
  }
  return u;
}

std::vector<ComplexMatrix> product_derivatives(const ProductGate& gate) {
  const Eigen::Index dim = Eigen::Index{1} << gate.support.size();
  const std::size_t n_steps = gate.steps.size();
  std::vector<ComplexMatrix> factors;
  factors.reserve(n_steps);
  for (const auto& step : gate.steps) {
    if (const auto* r = std::get_if<RotationStep>(&step)) {
      factors.push_back(pauli_rotation(r->axis, gate.params.at(r->parameter)));
    } else {
      factors.push_back(std::get<FixedStep>(step).matrix);
    }
  }
  // prefix[k] = F_{k-1} ... F_0, suffix[k] = F_{n-1} ... F_{k+1}
  std::vector<ComplexMatrix> prefix(n_steps + 1, ComplexMatrix::Identity(dim, dim));
  for (std::size_t k = 0; k < n_steps; ++k) prefix[k + 1] = factors[k] * prefix[k];
  std::vector<ComplexMatrix> suffix(n_steps + 1, ComplexMatrix::Identity(dim, dim));
  for (std::size_t k = n_steps; k-- > 0;) suffix[k] = suffix[k + 1] * factors[k];

  std::vector<ComplexMatrix> out(gate.params.size(), ComplexMatrix::Zero(dim, dim));
  for (std::size_t k = 0; k < n_steps; ++k) {
    if (const auto* r = std::get_if<RotationStep>(&gate.steps[k])) {
      // d/dp exp(i p P) = i P exp(i p P)
      out.at(r->parameter) +=
          suffix[k + 1] * (kI * pauli_matrix(r->axis)) * factors[k] * prefix[k];
    }
  }
  return out;
}

ProductGate zyz_gate(int qubit, std::array<double, 3> params) {
  const PauliString z = PauliString::parse("Z");
  const PauliString y = PauliString::parse("Y");
  return ProductGate{{qubit},
                     {RotationStep{z, 0}, RotationStep{y, 1}, RotationStep{z, 2}},
                     {params.begin(), params.end()}};
}

ProductGate su4_decomposed_gate(int qubit_a, int qubit_b, std::span<const double> params) {
  if (params.size() != 15) {
    throw std::invalid_argument("su4_decomposed: expected 15 parameters, got " +
                                std::to_string(params.size()));
  }
  if (qubit_a == qubit_b) throw std::invalid_argument("su4_decomposed: qubits must differ");
  auto p = [](const char* s) { return PauliString::parse(s); };
  std::vector<ProductStep> steps;
  auto local_layer = [&](std::size_t offset) {
    steps.push_back(RotationStep{p("ZI"), offset + 0});
    steps.push_back(RotationStep{p("YI"), offset + 1});
    steps.push_back(RotationStep{p("ZI"), offset + 2});
    steps.push_back(RotationStep{p("IZ"), offset + 3});
    steps.push_back(RotationStep{p("IY"), offset + 4});
    steps.push_back(RotationStep{p("IZ"), offset + 5});
  };
  local_layer(0);
  // exp(i a XX) = CNOT exp(i a XI) CNOT and exp(i c ZZ) = CNOT exp(i c IZ) CNOT;
  // the three entangler factors commute.
  const ComplexMatrix cx = cnot_matrix();
  steps.push_back(FixedStep{cx});
  steps.push_back(RotationStep{p("XI"), 6});
  steps.push_back(RotationStep{p("IZ"), 8});
  steps.push_back(FixedStep{cx});
  steps.push_back(RotationStep{p("YY"), 7});
  local_layer(9);
  return ProductGate{{qubit_a, qubit_b}, std::move(steps), {params.begin(), params.end()}};
}

ComplexMatrix su4_decomposed_unitary(std::span<const double> params) {
  return product_unitary(su4_decomposed_gate(0, 1, params));
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

}  // namespace sungrad
