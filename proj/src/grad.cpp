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

#include "sungrad/grad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sungrad/dla.hpp"
#include "sungrad/error.hpp"

namespace sungrad {

namespace {

constexpr Complex kI{0.0, 1.0};

const SUNGate& sun_gate_at(const Circuit& c, std::size_t gate_pos, const char* who) {
  if (gate_pos >= c.gates.size()) {
    throw std::invalid_argument(std::string(who) + ": gate position " + std::to_string(gate_pos) +
                                " out of range");
  }
  const auto* g = std::get_if<SUNGate>(&c.gates[gate_pos]);
  if (g == nullptr) {
    throw std::invalid_argument(std::string(who) + ": gate " + std::to_string(gate_pos) +
                                " is not an SU(N) gate");
  }
  return *g;
}

Circuit with_inserted(const Circuit& c, std::size_t pos, FixedGate gate) {
  Circuit out = c;
  out.gates.insert(out.gates.begin() + static_cast<std::ptrdiff_t>(pos), Operation(std::move(gate)));
  return out;
}

Backend::Estimate evaluate_circuit(const Circuit& c, const VariationalProblem& problem,
                                   const Backend& backend) {
  return backend.evaluate(run_circuit(c, problem.initial), problem.observable);
}

std::string format_gaps(const std::vector<double>& gaps) {
  std::ostringstream s;
  s.precision(17);
  s << '{';
  for (std::size_t i = 0; i < gaps.size(); ++i) s << (i ? ", " : "") << gaps[i];
  s << '}';
  return s.str();
}

}  // namespace

Backend Backend::with_shots(int shots, std::mt19937_64& rng) {
  if (shots < 1) throw std::invalid_argument("Backend: shots must be >= 1");
  Backend b;
  b.shots_ = shots;
  b.rng_ = &rng;
  return b;
}

Backend::Estimate Backend::evaluate(const StateVector& state, const Observable& h) const {
  if (is_exact()) return {expectation(state, h), 0.0};
  const ShotStatistics stats = sample_observable(state, h, shots_, *rng_);
  return {stats.mean, stats.variance / shots_};
}

double cost(const VariationalProblem& problem) {
  return expectation(run_circuit(problem.circuit, problem.initial), problem.observable);
}

Backend::Estimate cost(const VariationalProblem& problem, const Backend& backend) {
  return evaluate_circuit(problem.circuit, problem, backend);
}

SpectralGapSet spectral_gaps(const ComplexMatrix& omega, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_gaps: tolerance must be positive");
  const HermitianEig eig = hermitian_eig(Complex(0.0, -1.0) * omega);
  const auto& lam = eig.eigenvalues;
  std::vector<double> diffs;
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const double d = std::abs(lam(j) - lam(k));
      if (d > tol) diffs.push_back(d);
    }
  }
  std::sort(diffs.begin(), diffs.end());
  SpectralGapSet out;
  std::size_t i = 0;
  while (i < diffs.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < diffs.size() && diffs[j] - diffs[i] <= tol) sum += diffs[j++];
    out.gaps.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

SpectralGapSet spectral_gaps(const EffectiveGenerator& omega, double tol) {
  return spectral_gaps(omega.matrix, tol);
}

double ShiftRule::variance_factor() const {
  double s = 0.0;
  for (double w : weights) s += w * w;
  return 2.0 * s;
}

ShiftRule make_shift_rule(const SpectralGapSet& gaps, std::vector<double> shifts) {
  const auto r = static_cast<Eigen::Index>(gaps.count());
  if (r == 0) throw std::invalid_argument("make_shift_rule: no spectral gaps");
  if (static_cast<Eigen::Index>(shifts.size()) != r) {
    throw std::invalid_argument("make_shift_rule: need one shift per gap");
  }
  ShiftRule rule;
  rule.gaps = gaps.gaps;
  rule.shifts = std::move(shifts);
  rule.matrix.resize(r, r);
  for (Eigen::Index n = 0; n < r; ++n) {
    for (Eigen::Index m = 0; m < r; ++m) {
      rule.matrix(n, m) = 2.0 * std::sin(rule.shifts[static_cast<std::size_t>(n)] *
                                         rule.gaps[static_cast<std::size_t>(m)]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rule.matrix);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  rule.condition_number = smin > 0.0 ? sv(0) / smin : INFINITY;
  if (!(rule.condition_number <= kMaxShiftRuleCondition)) {
    throw DegenerateRuleError("shift rule matrix is singular (condition number " +
                              std::to_string(rule.condition_number) + ") for gaps " +
                              format_gaps(rule.gaps));
  }
  Eigen::VectorXd delta(r);
  for (Eigen::Index m = 0; m < r; ++m) delta(m) = rule.gaps[static_cast<std::size_t>(m)];
  // weights^T = delta^T M^-1  <=>  M^T weights = delta
  const Eigen::VectorXd w = rule.matrix.transpose().fullPivLu().solve(delta);
  rule.weights.assign(w.data(), w.data() + r);
  return rule;
}

ShiftRule make_shift_rule(const SpectralGapSet& gaps) {
  const std::size_t r = gaps.count();
  std::vector<double> shifts(r);
  for (std::size_t n = 1; n <= r; ++n) {
    shifts[n - 1] = static_cast<double>(2 * n - 1) * std::numbers::pi / (4.0 * static_cast<double>(r));
  }
  return make_shift_rule(gaps, std::move(shifts));
}

ShiftRule make_conditioned_shift_rule(const SpectralGapSet& gaps) {
  const std::size_t r = gaps.count();
  if (r == 0) throw std::invalid_argument("make_shift_rule: no spectral gaps");
  std::vector<double> base(r);
  for (std::size_t n = 1; n <= r; ++n) {
    base[n - 1] = static_cast<double>(2 * n - 1) * std::numbers::pi / (4.0 * static_cast<double>(r));
  }
  std::optional<ShiftRule> best;
  for (int k = 0; k <= 40; ++k) {
    const double stretch = std::exp2(0.25 * k);
    std::vector<double> shifts = base;
    for (auto& s : shifts) s *= stretch;
    try {
      ShiftRule rule = make_shift_rule(gaps, std::move(shifts));
      if (k == 0 && rule.condition_number <= kRescaleCondition) return rule;
      if (!best || rule.condition_number < best->condition_number) best = std::move(rule);
    } catch (const DegenerateRuleError&) {
    }
  }
  if (!best) {
    throw DegenerateRuleError("no equidistant shift grid resolves the gaps " + format_gaps(gaps.gaps));
  }
  return *best;
}

ShiftRule optimize_shifts(const SpectralGapSet& gaps, int max_iterations) {
  ShiftRule best = make_shift_rule(gaps);
  double best_value = best.variance_factor();
  double step = best.shifts.empty() ? 0.0 : best.shifts.front();
  for (int it = 0; it < max_iterations && step > 1e-10; ++it) {
    bool improved = false;
    for (std::size_t k = 0; k < best.shifts.size() && !improved; ++k) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = best.shifts;
        trial[k] += sign * step;
        if (trial[k] <= 0.0) continue;
        try {
          ShiftRule candidate = make_shift_rule(gaps, trial);
          if (candidate.variance_factor() < best_value) {
            best_value = candidate.variance_factor();
            best = std::move(candidate);
            improved = true;
            break;
          }
        } catch (const DegenerateRuleError&) {
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

ShiftedCircuits gpsr_circuits(const VariationalProblem& problem, std::size_t gate_pos,
                              std::size_t l, double gap_tol) {
  const SUNGate& gate = sun_gate_at(problem.circuit, gate_pos, "gpsr_derivative");
  const EffectiveGenerator omega = effective_generator(gate, l);
  const SpectralGapSet gaps = spectral_gaps(omega, gap_tol);
  ShiftedCircuits out;
  if (gaps.count() == 0) return out;  // Omega_l = 0
  out.rule = make_conditioned_shift_rule(gaps);
  for (double shift : out.rule.shifts) {
    for (double sign : {1.0, -1.0}) {
      out.circuits.push_back(with_inserted(
          problem.circuit, gate_pos,
          FixedGate{expm_skew_hermitian(omega.matrix * (sign * shift)), gate.support}));
    }
  }
  return out;
}

GradientEstimate gpsr_derivative(const VariationalProblem& problem, std::size_t gate_pos,
                                 std::size_t l, const Backend& backend, double gap_tol) {
  const ShiftedCircuits plan = gpsr_circuits(problem, gate_pos, l, gap_tol);
  GradientEstimate est;
  est.circuits_used = static_cast<int>(plan.circuits.size());
  double variance = 0.0;
  for (std::size_t n = 0; n < plan.rule.shifts.size(); ++n) {
    const auto plus = evaluate_circuit(plan.circuits[2 * n], problem, backend);
    const auto minus = evaluate_circuit(plan.circuits[2 * n + 1], problem, backend);
    const double w = plan.rule.weights[n];
    est.value += w * (plus.value - minus.value);
    variance += w * w * (plus.variance + minus.variance);
  }
  est.std_error = std::sqrt(variance);
  return est;
}

GradientEstimate stochastic_derivative(const VariationalProblem& problem, std::size_t gate_pos,
                                       std::size_t l, int num_s_samples, const Backend& backend,
                                       std::mt19937_64& s_rng) {
  const SUNGate& gate = sun_gate_at(problem.circuit, gate_pos, "stochastic_derivative");
  if (l >= gate.generator.size()) {
    throw std::invalid_argument("stochastic_derivative: parameter index out of range");
  }
  if (num_s_samples < 1) throw std::invalid_argument("stochastic_derivative: need >= 1 sample");

  // exp(s A) = V diag(exp(i s lambda)) V^dagger with A = i V diag(lambda) V^dagger.
  const HermitianEig eig = hermitian_eig(Complex(0.0, -1.0) * assemble_generator(gate));
  auto exp_scaled = [&](double s) {
    ComplexVector phases(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, s * eig.eigenvalues(k));
    return ComplexMatrix(eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint());
  };
  const PauliString& axis = gate.generator.basis()[l];
  const ComplexMatrix kick_plus = pauli_rotation(axis, std::numbers::pi / 4.0);
  const ComplexMatrix kick_minus = pauli_rotation(axis, -std::numbers::pi / 4.0);

  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double mean = 0.0;
  double m2 = 0.0;
  for (int k = 0; k < num_s_samples; ++k) {
    const double s = uniform(s_rng);
    const ComplexMatrix first = exp_scaled(1.0 - s);
    const ComplexMatrix last = exp_scaled(s);
    double diff = 0.0;
    for (int sign : {1, -1}) {
      Circuit c = problem.circuit;
      auto at = c.gates.begin() + static_cast<std::ptrdiff_t>(gate_pos);
      at = c.gates.erase(at);
      at = c.gates.insert(at, Operation(FixedGate{last, gate.support}));
      at = c.gates.insert(at, Operation(FixedGate{sign > 0 ? kick_plus : kick_minus, gate.support}));
      c.gates.insert(at, Operation(FixedGate{first, gate.support}));
      diff += sign * evaluate_circuit(c, problem, backend).value;
    }
    const double delta = diff - mean;
    mean += delta / (k + 1);
    m2 += delta * (diff - mean);
  }
  GradientEstimate est;
  est.value = mean;
  est.std_error = num_s_samples > 1 ? std::sqrt(m2 / (num_s_samples - 1) / num_s_samples) : 0.0;
  est.circuits_used = 2 * num_s_samples;
  return est;
}

GradientEstimate finite_difference_derivative(const VariationalProblem& problem,
                                              std::size_t gate_pos, std::size_t l, double delta,
                                              const Backend& backend) {
  if (!(delta > 0.0)) throw std::invalid_argument("finite_difference_derivative: delta must be > 0");
  if (gate_pos >= problem.circuit.gates.size()) {
    throw std::invalid_argument("finite_difference_derivative: gate position out of range");
  }
  const auto& op = problem.circuit.gates[gate_pos];
  if (l >= operation_parameter_count(op)) {
    throw std::invalid_argument("finite_difference_derivative: parameter index out of range");
  }
  auto shifted = [&](double offset) {
    Circuit c = problem.circuit;
    auto& target = c.gates[gate_pos];
    if (auto* s = std::get_if<SUNGate>(&target)) {
      s->generator.set_coefficient(l, s->generator.coefficients()[l] + offset);
    } else if (auto* p = std::get_if<ProductGate>(&target)) {
      p->params[l] += offset;
    }
    return c;
  };
  const auto plus = evaluate_circuit(shifted(0.5 * delta), problem, backend);
  const auto minus = evaluate_circuit(shifted(-0.5 * delta), problem, backend);
  return {(plus.value - minus.value) / delta,
          std::sqrt(plus.variance + minus.variance) / delta, 2};
}

std::vector<GradientEstimate> pauli_shift_gradient(const VariationalProblem& problem,
                                                   std::size_t gate_pos,
                                                   const Backend& backend) {
  const SUNGate& gate = sun_gate_at(problem.circuit, gate_pos, "pauli_shift_gradient");
  const DLA dla = dla_closure(gate.generator.basis());
  const auto omegas = effective_generators(gate);

  std::vector<std::vector<double>> coeffs;
  coeffs.reserve(omegas.size());
  for (const auto& omega : omegas) {
    PauliDecomposition d = pauli_decompose(omega.matrix, dla.basis);
    if (d.residual > 1e-8 * std::max(1.0, omega.matrix.norm())) {
      throw ConsistencyError("effective generator leaves the dynamical Lie algebra (residual " +
                             std::to_string(d.residual) + ")");
    }
    coeffs.push_back(std::move(d.coefficients));
  }

  std::vector<GradientEstimate> out(omegas.size());
  std::vector<double> variance(omegas.size(), 0.0);
  int circuits = 0;
  for (std::size_t m = 0; m < dla.basis.size(); ++m) {
    bool active = false;
    for (const auto& c : coeffs) active = active || std::abs(c[m]) > 1e-12;
    if (!active) continue;
    // d/dtau C with exp(i tau P_m) inserted: C(pi/4) - C(-pi/4)
    const auto plus = evaluate_circuit(
        with_inserted(problem.circuit, gate_pos,
                      FixedGate{pauli_rotation(dla.basis[m], std::numbers::pi / 4.0), gate.support}),
        problem, backend);
    const auto minus = evaluate_circuit(
        with_inserted(problem.circuit, gate_pos,
                      FixedGate{pauli_rotation(dla.basis[m], -std::numbers::pi / 4.0), gate.support}),
        problem, backend);
    circuits += 2;
    const double d_c = plus.value - minus.value;
    for (std::size_t l = 0; l < out.size(); ++l) {
      out[l].value += coeffs[l][m] * d_c;
      variance[l] += coeffs[l][m] * coeffs[l][m] * (plus.variance + minus.variance);
    }
  }
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l].std_error = std::sqrt(variance[l]);
    out[l].circuits_used = circuits;
  }
  return out;
}

std::vector<ComplexMatrix> operation_derivatives(const Operation& op) {
  if (const auto* s = std::get_if<SUNGate>(&op)) {
    const ComplexMatrix u = gate_unitary(*s);
    std::vector<ComplexMatrix> out;
    for (const auto& omega : effective_generators(*s)) out.push_back(u * omega.matrix);
    return out;
  }
  if (const auto* p = std::get_if<ProductGate>(&op)) return product_derivatives(*p);
  return {};
}

std::vector<double> exact_gradient(const VariationalProblem& problem, std::size_t gate_pos) {
  const Circuit& c = problem.circuit;
  if (gate_pos >= c.gates.size()) throw std::invalid_argument("exact_gradient: bad gate position");
  if (problem.initial.n_qubits() != c.n_qubits || problem.observable.dim() != problem.initial.dim()) {
    throw std::invalid_argument("exact_gradient: dimension mismatch");
  }
  ComplexVector before = problem.initial.amplitudes();
  apply_gates(before, c, 0, gate_pos);
  ComplexVector final_state = before;
  apply_gates(final_state, c, gate_pos, c.gates.size());
  ComplexVector lambda = problem.observable.matrix() * final_state;
  for (std::size_t g = c.gates.size(); g-- > gate_pos + 1;) {
    apply_matrix(lambda, c.n_qubits, operation_unitary(c.gates[g]).adjoint(),
                 operation_support(c.gates[g]));
  }
  const auto& op = c.gates[gate_pos];
  std::vector<double> grad;
  for (const auto& d : operation_derivatives(op)) {
    ComplexVector chi = before;
    apply_matrix(chi, c.n_qubits, d, operation_support(op));
    grad.push_back(2.0 * lambda.dot(chi).real());
  }
  return grad;
}

std::vector<double> circuit_gradient(const VariationalProblem& problem) {
  const Circuit& c = problem.circuit;
  if (problem.initial.n_qubits() != c.n_qubits || problem.observable.dim() != problem.initial.dim()) {
    throw std::invalid_argument("circuit_gradient: dimension mismatch");
  }
  std::vector<ComplexMatrix> unitaries;
  unitaries.reserve(c.gates.size());
  ComplexVector psi = problem.initial.amplitudes();
  for (const auto& op : c.gates) {
    unitaries.push_back(operation_unitary(op));
    apply_matrix(psi, c.n_qubits, unitaries.back(), operation_support(op));
  }
  ComplexVector lambda = problem.observable.matrix() * psi;
  std::vector<double> grad(c.parameter_count(), 0.0);
  std::size_t offset = grad.size();
  for (std::size_t g = c.gates.size(); g-- > 0;) {
    const auto& op = c.gates[g];
    const auto& support = operation_support(op);
    const ComplexMatrix u_dag = unitaries[g].adjoint();
    apply_matrix(psi, c.n_qubits, u_dag, support);  // state before gate g
    const std::size_t k = operation_parameter_count(op);
    offset -= k;
    if (k > 0) {
      const auto derivs = operation_derivatives(op);
      for (std::size_t j = 0; j < k; ++j) {
        ComplexVector chi = psi;
        apply_matrix(chi, c.n_qubits, derivs[j], support);
        grad[offset + j] = 2.0 * lambda.dot(chi).real();
      }
    }
    apply_matrix(lambda, c.n_qubits, u_dag, support);
  }
  return grad;
}

void write_gradient_csv(std::ostream& out, const std::vector<GradientReportRow>& rows) {
  out << "method,parameter,value,std_error,circuits_used,shots\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : rows) {
    out << r.method << ',' << r.parameter << ',' << r.estimate.value << ','
        << r.estimate.std_error << ',' << r.estimate.circuits_used << ',' << r.shots << '\n';
  }
  out.precision(old_precision);
}

}  // namespace sungrad
