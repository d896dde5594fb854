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
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sungrad/grad.hpp"
#include "sungrad/sim.hpp"

namespace sungrad {

enum class GateKind { sun, decomposed };
enum class GradientMethod { exact, gpsr, pauli_shift, finite_diff, stochastic };

std::string to_string(GateKind kind);
std::string to_string(GradientMethod method);
/// Accepts sun|decomposed and exact|gpsr|pauli|pauli_shift|fd|finite_diff|stochastic.
GateKind parse_gate_kind(const std::string& s);
GradientMethod parse_gradient_method(const std::string& s);

/// Two-qubit gates on (0,1),(2,3),... then (1,2),(3,4),... per layer, all
/// parameters zero.
Circuit bricklayer_circuit(int n_qubits, int depth, GateKind kind);

struct GradientOptions {
  GradientMethod method = GradientMethod::exact;
  int shots = 0;                 // 0: exact expectation values
  double fd_delta = 1e-6;
  int stochastic_samples = 10;
};

/// Full gradient of the problem's cost, flattened like Circuit::parameters().
/// Shift-based methods treat product-gate parameters with the two-term rule
/// C(p + pi/4) - C(p - pi/4); every product-gate parameter must enter a
/// single rotation. `rng` drives shots and stochastic s draws.
std::vector<double> estimate_gradient(const VariationalProblem& problem,
                                      const GradientOptions& options, std::mt19937_64& rng);

struct DescentOptions {
  double learning_rate = 1e-3;
  int steps = 100;
  GradientOptions gradient;
  std::uint64_t seed = 0;
  bool record_parameters = true;
};

/// Cost history of one descent; index k is the state after k updates.
struct Trajectory {
  int instance = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<double> energies;
  std::vector<double> normalized;  // (E - e_min) / (e_max - e_min)
  std::vector<std::vector<double>> parameters;
};

/// theta <- theta - eta grad C. e_min/e_max come from the observable's
/// spectrum. Throws std::runtime_error on a non-finite cost.
Trajectory gradient_descent(Circuit circuit, const Observable& h, const StateVector& initial,
                            std::vector<double> theta0, const DescentOptions& options);

struct ExperimentConfig {
  int n_qubits = 6;
  int depth = 2;
  int n_instances = 20;
  int steps = 2000;
  double learning_rate = 1e-3;
  std::uint64_t seed = 1;
  GradientOptions gradient;
  double init_scale = 0.1;
  int threads = 1;

  void validate() const;
};

/// Overrides fields from key=value pairs (qubits, depth, instances, steps, lr,
/// seed, method, shots, delta, samples, init_scale, threads). Unknown keys
/// throw std::invalid_argument.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values);

struct InstanceResult {
  Trajectory sun;
  Trajectory decomposed;
  double final_delta() const;
};

struct ComparisonResult {
  ExperimentConfig config;
  std::vector<InstanceResult> instances;
  std::vector<double> mean_delta;    // per step, over instances
  std::vector<double> stderr_delta;  // per step
  int negative_final = 0;            // instances with final delta < 0
  double sign_test_p = 1.0;
};

/// P(X >= k) for X ~ Binomial(n, 1/2).
double sign_test_p_value(int k, int n);

/// Per instance i (RNG seeded with {seed, i}): a GUE Hamiltonian on the full
/// register, one initialization N(0, init_scale^2) shared by both gate kinds,
/// and one descent per kind from |0...0>.
ComparisonResult comparison_experiment(const ExperimentConfig& cfg);

/// step,mean_delta,stderr
void write_aggregate_csv(std::ostream& out, const ComparisonResult& r);
/// step,E_sun,Ebar_sun,E_decomposed,Ebar_decomposed
void write_instance_csv(std::ostream& out, const InstanceResult& r);

enum class BlochGate { sun, zyz };
std::string to_string(BlochGate kind);
BlochGate parse_bloch_gate(const std::string& s);

struct BlochTrajectory {
  double a = 0.0;
  BlochGate kind = BlochGate::sun;
  std::vector<std::array<double, 3>> bloch;  // (<X>, <Y>, <Z>) per step
  std::vector<double> costs;                 // -<Y>

  /// First step index with cost below the threshold, if any.
  std::optional<int> steps_to_reach(double threshold) const;
};

/// Single qubit from |0>, theta0 = (0, a, 0), cost -<Y>, exact gradients.
BlochTrajectory bloch_trajectory(double a, BlochGate kind, double eta, int steps);
std::vector<BlochTrajectory> bloch_trajectory_experiment(const std::vector<double>& a_values,
                                                         BlochGate kind, double eta, int steps);

/// step,a,gate,x,y,z,cost
void write_bloch_csv(std::ostream& out, const std::vector<BlochTrajectory>& paths);

}  // namespace sungrad
