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

#include "sungrad/speedlimit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "sungrad/error.hpp"

namespace sungrad {

namespace {

constexpr Complex kI{0.0, 1.0};

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_unit(const Vec3& v, const char* who) {
  if (std::abs(std::sqrt(dot(v, v)) - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": rotation axis is not a unit vector");
  }
}

const std::vector<PauliString>& single_qubit_axes() {
  static const std::vector<PauliString> axes{PauliString::parse("X"), PauliString::parse("Y"),
                                             PauliString::parse("Z")};
  return axes;
}

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if (dim < 2 || (Eigen::Index{1} << n) != dim) {
    throw std::invalid_argument("geodesic_time: dimension is not a power of two");
  }
  return n;
}

}  // namespace

double path_length(const SUNGate& gate, double t) {
  if (t < 0.0) throw std::invalid_argument("path_length: negative time");
  if (gate.generator.norm() == 0.0) throw std::invalid_argument("path_length: theta = 0");
  const double dim = static_cast<double>(Eigen::Index{1} << gate.generator.n_qubits());
  return std::sqrt(dim) * t;
}

double path_length_quadrature(const SUNGate& gate, double t, int panels) {
  if (t < 0.0) throw std::invalid_argument("path_length_quadrature: negative time");
  if (panels < 1) throw std::invalid_argument("path_length_quadrature: need >= 1 panel");
  const double h = t / panels;
  const double eps = 1e-5;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double s = (k + 0.5) * h;
    const ComplexMatrix du = (timed_evolution(gate, s + eps) - timed_evolution(gate, s - eps)) / (2 * eps);
    total += std::sqrt((du.adjoint() * du).trace().real()) * h;
  }
  return total;
}

GeodesicResult geodesic_time(const ComplexMatrix& target) {
  if (target.rows() != target.cols()) throw std::invalid_argument("geodesic_time: not square");
  const int n = qubits_for_dim(target.rows());
  const auto dim = target.rows();
  if (unitarity_residual(target) > 1e-8 * std::sqrt(static_cast<double>(dim))) {
    throw std::invalid_argument("geodesic_time: target is not unitary");
  }
  if (std::abs(target.determinant() - Complex(1.0, 0.0)) > 1e-8) {
    throw std::invalid_argument("geodesic_time: target determinant is not 1");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(target);
  const ComplexMatrix& q = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  std::vector<double> phases(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double phi = std::arg(t(k, k));
    if (std::numbers::pi - std::abs(phi) < 1e-10) {
      throw BranchAmbiguityError("geodesic_time: eigenphase " + std::to_string(phi) +
                                 " lies on the branch cut at pi");
    }
    phases[static_cast<std::size_t>(k)] = phi;
  }
  // The phases sum to 2 pi k; moving k of them by 2 pi (largest first, or the
  // smallest upward when k < 0) gives the traceless log of least norm.
  const double sum = std::accumulate(phases.begin(), phases.end(), 0.0);
  const long wraps = std::lround(sum / (2.0 * std::numbers::pi));
  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return phases[a] > phases[b] || (phases[a] == phases[b] && a < b);
  });
  for (long w = 0; w < std::abs(wraps); ++w) {
    if (wraps > 0) {
      phases[order[static_cast<std::size_t>(w)]] -= 2.0 * std::numbers::pi;
    } else {
      phases[order[order.size() - 1 - static_cast<std::size_t>(w)]] += 2.0 * std::numbers::pi;
    }
  }
  ComplexVector diag(dim);
  for (Eigen::Index k = 0; k < dim; ++k) diag(k) = kI * phases[static_cast<std::size_t>(k)];
  // Normal input: the Schur factor is diagonal up to rounding.
  const ComplexMatrix log_u = q * diag.asDiagonal() * q.adjoint();

  const auto basis = enumerate_basis(n);
  const PauliDecomposition d = pauli_decompose(log_u, basis);
  double norm2 = 0.0;
  for (double c : d.coefficients) norm2 += c * c;
  GeodesicResult out{std::sqrt(norm2), AlgebraElement(basis, std::vector<double>(basis.size(), 0.0))};
  if (out.t_g > 0.0) {
    std::vector<double> unit = d.coefficients;
    for (auto& c : unit) c /= out.t_g;
    out.direction.set_coefficients(unit);
  }
  return out;
}

ComplexMatrix su2_rotation(const Vec3& phi, double t) {
  const auto& axes = single_qubit_axes();
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < 3; ++k) a += (kI * (t * phi[static_cast<std::size_t>(k)])) * pauli_matrix(axes[static_cast<std::size_t>(k)]);
  return expm_skew_hermitian(a);
}

SU2Rotation su2_compose(const Vec3& phi1, double t1, const Vec3& phi2, double t2) {
  require_unit(phi1, "su2_compose");
  require_unit(phi2, "su2_compose");
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  const double scalar = c1 * c2 - dot(phi1, phi2) * s1 * s2;
  const Vec3 x = cross(phi1, phi2);
  Vec3 v{};
  for (std::size_t k = 0; k < 3; ++k) v[k] = c2 * s1 * phi1[k] + c1 * s2 * phi2[k] + s1 * s2 * x[k];
  const double vn = std::sqrt(dot(v, v));
  SU2Rotation out;
  out.t = std::atan2(vn, scalar);
  if (vn > 0.0) {
    for (std::size_t k = 0; k < 3; ++k) out.axis[k] = v[k] / vn;
  } else {
    out.axis = phi1;
  }
  return out;
}

double decomposition_overhead(const Vec3& phi1, double t1, const Vec3& phi2, double t2) {
  return t1 + t2 - su2_compose(phi1, t1, phi2, t2).t;
}

std::vector<BiasPoint> bias_surface(int n_samples, std::mt19937_64& rng) {
  if (n_samples < 1) throw std::invalid_argument("bias_surface: need >= 1 sample");
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<BiasPoint> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    Vec3 w{expo(rng), expo(rng), expo(rng)};
    const double total = w[0] + w[1] + w[2];
    BiasPoint p;
    for (std::size_t k = 0; k < 3; ++k) p.theta[k] = (coin(rng) ? -1.0 : 1.0) * w[k] / total;
    p.phi = zyz_to_canonical(p.theta[0], p.theta[1], p.theta[2]);
    p.norm = std::sqrt(dot(p.phi, p.phi));
    out.push_back(p);
  }
  return out;
}

std::vector<BiasPoint> su2_surface(int n_samples, std::mt19937_64& rng) {
  if (n_samples < 1) throw std::invalid_argument("su2_surface: need >= 1 sample");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& axes = single_qubit_axes();
  std::vector<BiasPoint> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    Vec3 g{normal(rng), normal(rng), normal(rng)};
    const double gn = std::sqrt(dot(g, g));
    BiasPoint p;
    for (std::size_t k = 0; k < 3; ++k) p.theta[k] = g[k] / gn;
    const SUNGate gate(AlgebraElement(axes, {p.theta[0], p.theta[1], p.theta[2]}), {0});
    const GeodesicResult r = geodesic_time(gate_unitary(gate));
    for (std::size_t k = 0; k < 3; ++k) p.phi[k] = r.t_g * r.direction.coefficients()[k];
    p.norm = std::sqrt(dot(p.phi, p.phi));
    out.push_back(p);
  }
  return out;
}

double mandelstam_tamm_time(const ComplexMatrix& rho, const ComplexMatrix& rho_f) {
  if (rho.rows() != rho_f.rows() || rho.rows() != rho.cols() || rho_f.rows() != rho_f.cols()) {
    throw std::invalid_argument("mandelstam_tamm_time: shape mismatch");
  }
  const double overlap = std::clamp((rho * rho_f).trace().real(), 0.0, 1.0);
  return std::acos(std::sqrt(overlap)) / std::sqrt(static_cast<double>(rho.rows()));
}

void write_bias_csv(std::ostream& out, const std::vector<BiasPoint>& points) {
  out << "theta1,theta2,theta3,phi1,phi2,phi3,norm\n";
  const auto old = out.precision(17);
  for (const auto& p : points) {
    out << p.theta[0] << ',' << p.theta[1] << ',' << p.theta[2] << ',' << p.phi[0] << ','
        << p.phi[1] << ',' << p.phi[2] << ',' << p.norm << '\n';
  }
  out.precision(old);
}

void write_overhead_csv(std::ostream& out, const std::vector<OverheadRow>& rows) {
  out << "t1,t2,cosangle,t_g,delta_t\n";
  const auto old = out.precision(17);
  for (const auto& r : rows) {
    out << r.t1 << ',' << r.t2 << ',' << r.cos_angle << ',' << r.t_g << ',' << r.overhead << '\n';
  }
  out.precision(old);
}

}  // namespace sungrad
