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
#include <iosfwd>
#include <random>
#include <vector>

#include "sungrad/gate.hpp"

namespace sungrad {

using Vec3 = std::array<double, 3>;

/// Shortest evolution reaching a unitary: target = exp(t_g * A_hat) with A_hat
/// of unit coordinate norm. `direction` is zero for the identity.
struct GeodesicResult {
  double t_g = 0.0;
  AlgebraElement direction;
};

/// sqrt(N) * t: length of t -> timed_evolution(gate, t) under the Frobenius
/// metric. Throws std::invalid_argument at theta = 0 or t < 0.
double path_length(const SUNGate& gate, double t);

/// Midpoint rule for the integral of sqrt(Tr(dU^dagger dU)) over [0, t], with
/// dU/dt from central differences of timed_evolution.
double path_length_quadrature(const SUNGate& gate, double t, int panels = 1000);

/// Minimal-norm traceless logarithm of a special unitary. Eigenphases are
/// taken in (-pi, pi]; throws BranchAmbiguityError when one lies within 1e-10
/// of pi, std::invalid_argument for non-unitary input or det != 1.
GeodesicResult geodesic_time(const ComplexMatrix& target);

/// Closed-form composition of exp(i t1 phi1.sigma) followed by
/// exp(i t2 phi2.sigma). Axes must be unit vectors.
struct SU2Rotation {
  Vec3 axis{0.0, 0.0, 0.0};
  double t = 0.0;
};
SU2Rotation su2_compose(const Vec3& phi1, double t1, const Vec3& phi2, double t2);

/// exp(i t phi.sigma).
ComplexMatrix su2_rotation(const Vec3& phi, double t);

/// t1 + t2 - t_g of the composed rotation.
double decomposition_overhead(const Vec3& phi1, double t1, const Vec3& phi2, double t2);

struct BiasPoint {
  Vec3 theta;
  Vec3 phi;
  double norm = 0.0;
};

/// ZYZ angles drawn uniformly on |t1| + |t2| + |t3| = 1 and mapped to
/// canonical coordinates.
std::vector<BiasPoint> bias_surface(int n_samples, std::mt19937_64& rng);

/// SU(2)-gate counterpart: theta uniform on the unit sphere, phi read back
/// from the matrix logarithm of exp(i theta.sigma).
std::vector<BiasPoint> su2_surface(int n_samples, std::mt19937_64& rng);

/// arccos(sqrt(Tr(rho rho_f))) / sqrt(N) for density matrices rho, rho_f.
double mandelstam_tamm_time(const ComplexMatrix& rho, const ComplexMatrix& rho_f);

/// theta1,theta2,theta3,phi1,phi2,phi3,norm
void write_bias_csv(std::ostream& out, const std::vector<BiasPoint>& points);

struct OverheadRow {
  double t1 = 0.0;
  double t2 = 0.0;
  double cos_angle = 0.0;  // phi1 . phi2
  double t_g = 0.0;
  double overhead = 0.0;
};
/// t1,t2,cosangle,t_g,delta_t
void write_overhead_csv(std::ostream& out, const std::vector<OverheadRow>& rows);

}  // namespace sungrad
