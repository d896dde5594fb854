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

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "sungrad/gate.hpp"
#include "sungrad/sim.hpp"

namespace sungrad {

/// Cost C = <psi_0| U^dagger H U |psi_0> of a circuit applied to a pure state.
struct VariationalProblem {
  Circuit circuit;
  StateVector initial;
  Observable observable;
};

/// How a cost is estimated: exactly, or as the mean of `shots` measurement
/// outcomes. A shot backend borrows the caller's generator.
class Backend {
 public:
  static Backend exact() { return Backend(); }
  static Backend with_shots(int shots, std::mt19937_64& rng);

  bool is_exact() const { return shots_ == 0; }
  int shots() const { return shots_; }

  struct Estimate {
    double value = 0.0;
    double variance = 0.0;  // variance of `value` itself; 0 when exact
  };
  Estimate evaluate(const StateVector& state, const Observable& h) const;

 private:
  Backend() = default;
  int shots_ = 0;
  std::mt19937_64* rng_ = nullptr;
};

double cost(const VariationalProblem& problem);
Backend::Estimate cost(const VariationalProblem& problem, const Backend& backend);

/// Unique positive differences of the eigenvalues of -i Omega, ascending.
struct SpectralGapSet {
  std::vector<double> gaps;
  std::size_t count() const { return gaps.size(); }
};

inline constexpr double kDefaultGapTolerance = 1e-8;

/// Differences closer than `tol` are merged into one gap (their mean).
SpectralGapSet spectral_gaps(const ComplexMatrix& omega, double tol = kDefaultGapTolerance);
SpectralGapSet spectral_gaps(const EffectiveGenerator& omega,
                             double tol = kDefaultGapTolerance);

/// Linear system of the generalized parameter-shift rule: M_nm = 2 sin(d_n D_m),
/// r = M^-1 c, derivative = D . r = weights . c.
struct ShiftRule {
  std::vector<double> gaps;
  std::vector<double> shifts;
  Eigen::MatrixXd matrix;
  std::vector<double> weights;  // D^T M^-1
  double condition_number = 0.0;

  /// Var(derivative) / sigma_0^2 under equal per-circuit variance sigma_0^2/shots
  /// absorbed into sigma_0: 2 * sum_m weights_m^2.
  double variance_factor() const;
};

inline constexpr double kMaxShiftRuleCondition = 1e12;

/// Equidistant shifts d_n = (2n - 1) pi / (4R). Throws DegenerateRuleError if
/// M is singular or its condition number exceeds kMaxShiftRuleCondition.
ShiftRule make_shift_rule(const SpectralGapSet& gaps);
ShiftRule make_shift_rule(const SpectralGapSet& gaps, std::vector<double> shifts);

/// Equidistant shifts when their condition number is at most
/// kRescaleCondition; otherwise the equidistant grid stretched by the factor
/// in [1, 1024] that minimizes cond(M). Gaps far from the Pauli value 2 make
/// the unstretched grid numerically singular. Throws DegenerateRuleError if
/// no stretch brings the condition number below kMaxShiftRuleCondition.
inline constexpr double kRescaleCondition = 1e8;
ShiftRule make_conditioned_shift_rule(const SpectralGapSet& gaps);

/// Minimizes variance_factor over the shifts with a compass search started
/// from the equidistant rule. The per-circuit variance is taken as constant.
ShiftRule optimize_shifts(const SpectralGapSet& gaps, int max_iterations = 2000);

struct GradientEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int circuits_used = 0;
};

/// The 2R shifted circuits of one GPSR derivative: index 2n inserts
/// exp(+d_n Omega_l) before the gate, index 2n+1 inserts exp(-d_n Omega_l).
struct ShiftedCircuits {
  ShiftRule rule;
  std::vector<Circuit> circuits;
};
ShiftedCircuits gpsr_circuits(const VariationalProblem& problem, std::size_t gate_pos,
                              std::size_t l, double gap_tol = kDefaultGapTolerance);

GradientEstimate gpsr_derivative(const VariationalProblem& problem, std::size_t gate_pos,
                                 std::size_t l, const Backend& backend,
                                 double gap_tol = kDefaultGapTolerance);

/// Monte Carlo over s ~ U(0,1) of C_+(s) - C_-(s), with the gate replaced by
/// exp(s A) exp(+-i pi/4 P_l) exp((1-s) A). `s_rng` drives the s draws only.
GradientEstimate stochastic_derivative(const VariationalProblem& problem, std::size_t gate_pos,
                                       std::size_t l, int num_s_samples, const Backend& backend,
                                       std::mt19937_64& s_rng);

/// [C(theta + delta/2 e_l) - C(theta - delta/2 e_l)] / delta. Works for any
/// parameterized gate.
GradientEstimate finite_difference_derivative(const VariationalProblem& problem,
                                              std::size_t gate_pos, std::size_t l, double delta,
                                              const Backend& backend);

/// All partial derivatives of one SU(N) gate from two-term rules on the
/// Pauli strings of its dynamical Lie algebra. circuits_used on every entry
/// is the total for the gate.
std::vector<GradientEstimate> pauli_shift_gradient(const VariationalProblem& problem,
                                                   std::size_t gate_pos,
                                                   const Backend& backend);

/// Exact partial derivatives of one gate's parameters (SU(N) or product gate).
std::vector<double> exact_gradient(const VariationalProblem& problem, std::size_t gate_pos);

/// Exact gradient of every circuit parameter, flattened as
/// Circuit::parameters(), through one backward sweep.
std::vector<double> circuit_gradient(const VariationalProblem& problem);

/// dU/dp for each parameter of an operation.
std::vector<ComplexMatrix> operation_derivatives(const Operation& op);

/// CSV rows: method,parameter,value,std_error,circuits_used,shots
struct GradientReportRow {
  std::string method;
  std::size_t parameter = 0;
  GradientEstimate estimate;
  int shots = 0;
};
void write_gradient_csv(std::ostream& out, const std::vector<GradientReportRow>& rows);

}  // namespace sungrad
