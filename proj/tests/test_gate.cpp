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

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sungrad/gate.hpp"

using namespace sungrad;

namespace {

SUNGate random_gate(int n, std::mt19937_64& rng, double scale = 1.0) {
  const auto basis = enumerate_basis(n);
  std::vector<int> support(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) support[static_cast<std::size_t>(q)] = q;
  return SUNGate(AlgebraElement(basis, oracle::normal_vector(basis.size(), rng, scale)), support);
}

oracle::Mat dense_generator(const SUNGate& g) {
  oracle::Mat a = oracle::Mat::Zero(Eigen::Index{1} << g.generator.n_qubits(), Eigen::Index{1} << g.generator.n_qubits());
  for (std::size_t m = 0; m < g.generator.size(); ++m) {
    a += oracle::C(0, g.generator.coefficients()[m]) * oracle::pauli(g.generator.basis()[m].str());
  }
  return a;
}

}  // namespace

TEST(AlgebraElement, Validation) {
  EXPECT_THROW(AlgebraElement({}, {}), std::invalid_argument);
  EXPECT_THROW(AlgebraElement(parse_pauli_list("X,Y"), {1.0}), std::invalid_argument);
  EXPECT_THROW(AlgebraElement(parse_pauli_list("X,X"), {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(AlgebraElement(parse_pauli_list("I,X"), {1.0, 2.0}), std::invalid_argument);
  const auto full = AlgebraElement::full(2);
  EXPECT_EQ(full.size(), 15u);
  EXPECT_EQ(full.norm(), 0.0);
}

TEST(SUNGate, SupportValidation) {
  const auto gen = AlgebraElement::full(2);
  EXPECT_THROW(SUNGate(gen, {0}), std::invalid_argument);
  EXPECT_THROW(SUNGate(gen, {1, 1}), std::invalid_argument);
  EXPECT_THROW(SUNGate(gen, {0, -1}), std::invalid_argument);
  EXPECT_NO_THROW(SUNGate(gen, {3, 1}));
}

TEST(SUNGate, UnitaryMatchesTaylorAndIsSpecial) {
  std::mt19937_64 rng(1);
  for (int n : {1, 2, 3}) {
    const SUNGate g = random_gate(n, rng);
    const ComplexMatrix u = gate_unitary(g);
    EXPECT_LT(oracle::max_abs(u - oracle::expm(dense_generator(g))), 1e-11);
    EXPECT_LT(unitarity_residual(u), 1e-12);
    EXPECT_NEAR(std::abs(u.determinant() - Complex(1, 0)), 0.0, 1e-11);
  }
}

TEST(EffectiveGenerator, MatchesFiniteDifferenceOfUnitary) {
  std::mt19937_64 rng(2);
  for (int n : {1, 2}) {
    SUNGate g = random_gate(n, rng);
    const ComplexMatrix u = gate_unitary(g);
    const auto omegas = effective_generators(g);
    for (std::size_t l = 0; l < g.generator.size(); ++l) {
      const double h = 1e-5;
      SUNGate plus = g, minus = g;
      plus.generator.set_coefficient(l, g.generator.coefficients()[l] + h);
      minus.generator.set_coefficient(l, g.generator.coefficients()[l] - h);
      const oracle::Mat du = (oracle::expm(dense_generator(plus)) - oracle::expm(dense_generator(minus))) / (2 * h);
      const oracle::Mat expect = u.adjoint() * du;
      EXPECT_LT(oracle::max_abs(omegas[l].matrix - expect), 1e-8);
      EXPECT_LT(oracle::max_abs(effective_generator(g, l).matrix - omegas[l].matrix), 1e-13);
    }
  }
}

TEST(EffectiveGenerator, SkewHermitianTraceless) {
  std::mt19937_64 rng(3);
  const SUNGate g = random_gate(2, rng, 2.0);
  for (const auto& om : effective_generators(g)) {
    EXPECT_LT(skew_residual(om.matrix), 1e-12);
    EXPECT_LT(std::abs(om.matrix.trace()), 1e-12);
  }
}

TEST(EffectiveGenerator, SeriesConvergesToFrechetForm) {
  std::mt19937_64 rng(4);
  const SUNGate g = random_gate(2, rng, 0.3);
  for (std::size_t l : {0u, 7u, 14u}) {
    const ComplexMatrix series = effective_generator_series(g, l, 40);
    EXPECT_LT(oracle::max_abs(series - effective_generator(g, l).matrix), 1e-12);
  }
}

TEST(EffectiveGenerator, ZeroParametersGiveThePauliDirection) {
  const SUNGate g(AlgebraElement::full(2), {0, 1});
  for (std::size_t l = 0; l < 15; ++l) {
    const ComplexMatrix expect = Complex(0, 1) * oracle::pauli(g.generator.basis()[l].str());
    EXPECT_LT(oracle::max_abs(effective_generator(g, l).matrix - expect), 1e-14);
  }
}

TEST(EffectiveGenerator, CommutingGeneratorsStayFixed) {
  // A = i(a Z), Omega_Z = iZ for every a
  const SUNGate g(AlgebraElement(parse_pauli_list("Z"), {1.3}), {0});
  EXPECT_LT(oracle::max_abs(effective_generator(g, 0).matrix - Complex(0, 1) * oracle::pauli("Z")), 1e-13);
}

TEST(PauliDecompose, RoundTripsGenerators) {
  std::mt19937_64 rng(5);
  const SUNGate g = random_gate(2, rng);
  const auto omega = effective_generator(g, 3);
  const auto c = pauli_decompose_generator(omega);
  ComplexMatrix back = ComplexMatrix::Zero(4, 4);
  const auto basis = enumerate_basis(2);
  for (std::size_t m = 0; m < basis.size(); ++m) back += Complex(0, c[m]) * oracle::pauli(basis[m].str());
  EXPECT_LT(oracle::max_abs(back - omega.matrix), 1e-13);
  const auto d = pauli_decompose(omega.matrix, basis);
  EXPECT_LT(d.residual, 1e-13);
  EXPECT_LT(d.max_imaginary, 1e-13);
  EXPECT_THROW(pauli_decompose_generator({ComplexMatrix::Identity(2, 2), 0}), std::invalid_argument);
}

TEST(TimedEvolution, NormalizedDirection) {
  const SUNGate g(AlgebraElement(parse_pauli_list("X,Z"), {3.0, 4.0}), {0});
  const ComplexMatrix expect = oracle::expm(Complex(0, 1) * (0.6 * oracle::pauli("X") + 0.8 * oracle::pauli("Z")) * 0.7);
  EXPECT_LT(oracle::max_abs(timed_evolution(g, 0.7) - expect), 1e-13);
  const SUNGate zero(AlgebraElement(parse_pauli_list("X"), {0.0}), {0});
  EXPECT_THROW(normalized_generator(zero), std::invalid_argument);
}

TEST(PauliRotation, ClosedForm) {
  const auto p = PauliString::parse("XY");
  EXPECT_LT(oracle::max_abs(pauli_rotation(p, 0.4) - oracle::expm(Complex(0, 0.4) * oracle::pauli("XY"))), 1e-13);
}

TEST(Zyz, UnitaryIsProductOfRotations) {
  const ComplexMatrix expect = oracle::expm(Complex(0, 0.3) * oracle::pauli("Z")) *
                               oracle::expm(Complex(0, 1.1) * oracle::pauli("Y")) *
                               oracle::expm(Complex(0, -0.7) * oracle::pauli("Z"));
  EXPECT_LT(oracle::max_abs(zyz_unitary(-0.7, 1.1, 0.3) - expect), 1e-13);
}

TEST(Zyz, CanonicalCoordinatesReconstructGate) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
    const auto phi = zyz_to_canonical(t1, t2, t3);
    const oracle::Mat a = oracle::C(0, phi[0]) * oracle::pauli("X") + oracle::C(0, phi[1]) * oracle::pauli("Y") +
                          oracle::C(0, phi[2]) * oracle::pauli("Z");
    EXPECT_LT(oracle::max_abs(oracle::expm(a) - zyz_unitary(t1, t2, t3)), 1e-10);
  }
}

TEST(Zyz, SingleAxisExamples) {
  const auto z = zyz_to_canonical(1.0, 0.0, 0.0);
  EXPECT_NEAR(z[0], 0.0, 1e-15);
  EXPECT_NEAR(z[1], 0.0, 1e-15);
  EXPECT_NEAR(z[2], 1.0, 1e-15);
  const auto y = zyz_to_canonical(0.0, 1.0, 0.0);
  EXPECT_NEAR(y[0], 0.0, 1e-15);
  EXPECT_NEAR(y[1], 1.0, 1e-15);
  EXPECT_NEAR(y[2], 0.0, 1e-15);
}

TEST(ProductGate, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(7);
  const auto params = oracle::normal_vector(15, rng);
  const ProductGate g = su4_decomposed_gate(0, 1, params);
  const auto derivs = product_derivatives(g);
  ASSERT_EQ(derivs.size(), 15u);
  for (std::size_t k = 0; k < 15; ++k) {
    const double h = 1e-6;
    auto p = params, m = params;
    p[k] += h;
    m[k] -= h;
    const ComplexMatrix fd = (su4_decomposed_unitary(p) - su4_decomposed_unitary(m)) / (2 * h);
    EXPECT_LT(oracle::max_abs(derivs[k] - fd), 1e-8) << k;
  }
}

TEST(ProductGate, ZyzGateMatchesZyzUnitary) {
  const ProductGate g = zyz_gate(0, {0.2, -0.4, 1.3});
  EXPECT_LT(oracle::max_abs(product_unitary(g) - zyz_unitary(0.2, -0.4, 1.3)), 1e-14);
}

TEST(ProductGate, DecomposedBlockSpansSu4) {
  // The 15 tangent directions U^dagger dU at a generic point span su(4).
  std::mt19937_64 rng(8);
  const auto params = oracle::normal_vector(15, rng);
  const ProductGate g = su4_decomposed_gate(0, 1, params);
  const ComplexMatrix u = product_unitary(g);
  Eigen::MatrixXd jac(15, 15);
  const auto derivs = product_derivatives(g);
  const auto basis = enumerate_basis(2);
  for (std::size_t k = 0; k < 15; ++k) {
    const auto c = pauli_decompose(u.adjoint() * derivs[k], basis).coefficients;
    for (std::size_t m = 0; m < 15; ++m) jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = c[m];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  EXPECT_EQ(lu.rank(), 15);
  EXPECT_LT(unitarity_residual(u), 1e-12);
  EXPECT_NEAR(std::abs(u.determinant() - Complex(1, 0)), 0.0, 1e-12);
}

TEST(ProductGate, CnotMatrix) {
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = expect(2, 3) = expect(3, 2) = 1.0;
  EXPECT_EQ(cnot_matrix(), expect);
}
