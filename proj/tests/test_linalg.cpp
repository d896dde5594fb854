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

#include <random>

#include "oracles.hpp"
#include "sungrad/linalg.hpp"

using namespace sungrad;

TEST(Expm, PadeMatchesTaylorAcrossNorms) {
  std::mt19937_64 rng(1);
  for (double scale : {1e-4, 1e-2, 0.3, 1.0, 3.0, 10.0}) {
    for (int dim : {1, 2, 5, 8}) {
      const ComplexMatrix a = oracle::random_matrix(dim, rng, scale);
      const ComplexMatrix expect = oracle::expm(a);
      EXPECT_LT(oracle::max_abs(expm_pade(a) - expect), 1e-11 * std::max(1.0, oracle::max_abs(expect)))
          << "scale " << scale << " dim " << dim;
    }
  }
}

TEST(Expm, ZeroAndDiagonal) {
  EXPECT_LT(oracle::max_abs(expm_pade(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)), 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = Complex(1.0, 0.5);
  d(1, 1) = Complex(-2.0, 0.0);
  const ComplexMatrix e = expm_pade(d);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(Complex(1.0, 0.5))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(-2.0)), 0.0, 1e-15);
}

TEST(Expm, SkewHermitianIsUnitaryAndMatchesPade) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix a = Complex(0, 1) * oracle::random_hermitian(4, rng);
    const ComplexMatrix u = expm_skew_hermitian(a);
    EXPECT_LT(unitarity_residual(u), 1e-13);
    EXPECT_LT(oracle::max_abs(u - oracle::expm(a)), 1e-12);
  }
  EXPECT_THROW(expm_skew_hermitian(ComplexMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(Expm, FrechetMatchesCentralDifference) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix a = oracle::random_matrix(4, rng, 0.7);
    const ComplexMatrix e = oracle::random_matrix(4, rng);
    const auto [ea, l] = expm_frechet(a, e);
    EXPECT_LT(oracle::max_abs(ea - oracle::expm(a)), 1e-11);
    EXPECT_LT(oracle::max_abs(l - oracle::frechet(a, e)), 1e-7 * std::max(1.0, oracle::max_abs(l)));
  }
}

TEST(Expm, FrechetIsLinearInDirection) {
  std::mt19937_64 rng(4);
  const ComplexMatrix a = oracle::random_matrix(3, rng);
  const ComplexMatrix e1 = oracle::random_matrix(3, rng);
  const ComplexMatrix e2 = oracle::random_matrix(3, rng);
  const ComplexMatrix combo = expm_frechet(a, 2.0 * e1 - e2).second;
  const ComplexMatrix parts = 2.0 * expm_frechet(a, e1).second - expm_frechet(a, e2).second;
  EXPECT_LT(oracle::max_abs(combo - parts), 1e-11 * oracle::max_abs(combo));
}

TEST(Expm, FrechetCommutingDirection) {
  // L(a, a) = a exp(a)
  std::mt19937_64 rng(5);
  const ComplexMatrix a = oracle::random_matrix(4, rng, 0.5);
  const auto [ea, l] = expm_frechet(a, a);
  EXPECT_LT(oracle::max_abs(l - a * ea), 1e-12);
}

TEST(HermitianEig, ReconstructsAndIsDeterministic) {
  std::mt19937_64 rng(6);
  const ComplexMatrix h = oracle::random_hermitian(6, rng);
  const HermitianEig e1 = hermitian_eig(h);
  const HermitianEig e2 = hermitian_eig(h);
  const ComplexMatrix back = e1.eigenvectors * e1.eigenvalues.cast<Complex>().asDiagonal() * e1.eigenvectors.adjoint();
  EXPECT_LT(oracle::max_abs(back - h), 1e-12);
  EXPECT_TRUE(std::is_sorted(e1.eigenvalues.data(), e1.eigenvalues.data() + e1.eigenvalues.size()));
  EXPECT_EQ(e1.eigenvectors, e2.eigenvectors);
}

TEST(Residuals, Basics) {
  ComplexMatrix m(2, 2);
  m << Complex(0, 1), 1, -1, Complex(0, 2);
  EXPECT_NEAR(skew_residual(m), 0.0, 1e-15);
  EXPECT_GT(hermitian_residual(m), 1.0);
  EXPECT_NEAR(unitarity_residual(ComplexMatrix::Identity(3, 3)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(trace_inner(m, m) - Complex(7.0, 0.0)), 0.0, 1e-15);
}

TEST(Gue, HermitianWithUnitOffDiagonalSecondMoment) {
  std::mt19937_64 rng(7);
  double diag2 = 0.0, off2 = 0.0;
  const int draws = 4000;
  for (int k = 0; k < draws; ++k) {
    const ComplexMatrix h = sample_gue(3, rng);
    ASSERT_LT(hermitian_residual(h), 1e-15);
    diag2 += std::norm(h(0, 0));
    off2 += std::norm(h(0, 1));
  }
  // G entries with E|g|^2 = 1: E h_ii^2 = 1/2, E|h_ij|^2 = 1/2.
  EXPECT_NEAR(diag2 / draws, 0.5, 0.05);
  EXPECT_NEAR(off2 / draws, 0.5, 0.05);
}

TEST(Gue, SeededDrawsRepeat) {
  std::mt19937_64 a(9), b(9);
  EXPECT_EQ(sample_gue(4, a), sample_gue(4, b));
}
