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
#include <utility>

#include <Eigen/Dense>

#include "sungrad/pauli.hpp"

namespace sungrad {

using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
///
/// Each eigenvector's first component with modulus above 1e-8 is made real
/// and positive, so repeated runs produce identical bases.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

HermitianEig hermitian_eig(const ComplexMatrix& h);

/// Tr(a^dagger b).
Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double skew_residual(const ComplexMatrix& a);       // ||a + a^dagger||_F
double hermitian_residual(const ComplexMatrix& a);  // ||a - a^dagger||_F
double unitarity_residual(const ComplexMatrix& u);  // ||u^dagger u - I||_F

/// exp(a) for skew-Hermitian a through the eigendecomposition of -i a.
/// Throws std::invalid_argument when ||a + a^dagger|| > 1e-8 max(1, ||a||).
ComplexMatrix expm_skew_hermitian(const ComplexMatrix& a);

/// exp(a) for a general square matrix: degree-13 Padé with scaling and
/// squaring.
ComplexMatrix expm_pade(const ComplexMatrix& a);

/// (exp(a), L(a, e)) where L is the Fréchet derivative of exp at a in
/// direction e, read off the top-right block of exp([[a, e], [0, a]]).
std::pair<ComplexMatrix, ComplexMatrix> expm_frechet(const ComplexMatrix& a,
                                                     const ComplexMatrix& e);

/// (G + G^dagger) / 2 with i.i.d. standard complex Gaussian entries of G
/// (E|g|^2 = 1).
ComplexMatrix sample_gue(int dim, std::mt19937_64& rng);

}  // namespace sungrad
