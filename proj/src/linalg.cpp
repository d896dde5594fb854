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

#include "sungrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sungrad {

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: not square");
  const ComplexMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    auto col = out.eigenvectors.col(k);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > 1e-8) {
        col *= std::conj(col(r)) / std::abs(col(r));
        break;
      }
    }
  }
  return out;
}

Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_inner: dimension mismatch");
  }
  return (a.adjoint() * b).trace();
}

double skew_residual(const ComplexMatrix& a) {
  return (a + a.adjoint()).norm();
}

double hermitian_residual(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

double unitarity_residual(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm_skew_hermitian: not square");
  const double res = skew_residual(a);
  if (res > 1e-8 * std::max(1.0, a.norm())) {
    throw std::invalid_argument("expm_skew_hermitian: input is not skew-Hermitian (residual " +
                                std::to_string(res) + ")");
  }
  const HermitianEig eig = hermitian_eig(Complex(0.0, -1.0) * a);
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, eig.eigenvalues(k));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {

// Higham (2005) coefficients and theta_13.
constexpr double kPadeB[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

ComplexMatrix expm_pade(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm_pade: not square");
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
  }
  const ComplexMatrix s = a * std::ldexp(1.0, -squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix s2 = s * s;
  const ComplexMatrix s4 = s2 * s2;
  const ComplexMatrix s6 = s4 * s2;
  const auto& b = kPadeB;
  ComplexMatrix inner_u = b[13] * s6 + b[11] * s4 + b[9] * s2;
  ComplexMatrix u = s * (s6 * inner_u + b[7] * s6 + b[5] * s4 + b[3] * s2 + b[1] * id);
  ComplexMatrix inner_v = b[12] * s6 + b[10] * s4 + b[8] * s2;
  ComplexMatrix v = s6 * inner_v + b[6] * s6 + b[4] * s4 + b[2] * s2 + b[0] * id;
  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

std::pair<ComplexMatrix, ComplexMatrix> expm_frechet(const ComplexMatrix& a,
                                                     const ComplexMatrix& e) {
  if (a.rows() != a.cols() || e.rows() != a.rows() || e.cols() != a.cols()) {
    throw std::invalid_argument("expm_frechet: dimension mismatch");
  }
  const Eigen::Index n = a.rows();
  ComplexMatrix block = ComplexMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, n) = e;
  block.bottomRightCorner(n, n) = a;
  const ComplexMatrix big = expm_pade(block);
  return {big.topLeftCorner(n, n), big.topRightCorner(n, n)};
}

ComplexMatrix sample_gue(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("sample_gue: dim must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(dim, dim);
  // Row-major draw order keeps the sample independent of Eigen's storage.
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return (g + g.adjoint()) * 0.5;
}

}  // namespace sungrad
