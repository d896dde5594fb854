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

#include "sungrad/opt.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace sungrad {

namespace {

std::mt19937_64 instance_rng(std::uint64_t seed, int instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance)};
  return std::mt19937_64(seq);
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("config: " + key + " expects an integer, got '" + value + "'");
  }
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("config: " + key + " expects a number, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    if (!value.empty() && value.front() != '-') v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("config: " + key + " expects a non-negative integer, got '" +
                                value + "'");
  }
  return v;
}

double normalize_energy(double e, double e_min, double e_max) {
  const double span = e_max - e_min;
  if (span <= 0.0) return 0.0;
  return std::clamp((e - e_min) / span, 0.0, 1.0);
}

std::array<double, 3> bloch_vector(const StateVector& s) {
  const auto& a = s.amplitudes();
  const Complex c = std::conj(a(0)) * a(1);
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a(0)) - std::norm(a(1))};
}

}  // namespace

std::string to_string(GateKind kind) { return kind == GateKind::sun ? "sun" : "decomposed"; }

std::string to_string(GradientMethod method) {
  switch (method) {
    case GradientMethod::exact: return "exact";
    case GradientMethod::gpsr: return "gpsr";
    case GradientMethod::pauli_shift: return "pauli";
    case GradientMethod::finite_diff: return "fd";
    case GradientMethod::stochastic: return "stochastic";
  }
  return "exact";
}

GateKind parse_gate_kind(const std::string& s) {
  if (s == "sun") return GateKind::sun;
  if (s == "decomposed") return GateKind::decomposed;
  throw std::invalid_argument("unknown gate kind '" + s + "' (expected sun|decomposed)");
}

GradientMethod parse_gradient_method(const std::string& s) {
  if (s == "exact") return GradientMethod::exact;
  if (s == "gpsr") return GradientMethod::gpsr;
  if (s == "pauli" || s == "pauli_shift") return GradientMethod::pauli_shift;
  if (s == "fd" || s == "finite_diff") return GradientMethod::finite_diff;
  if (s == "stochastic") return GradientMethod::stochastic;
  throw std::invalid_argument("unknown gradient method '" + s +
                              "' (expected exact|gpsr|stochastic|fd|pauli)");
}

Circuit bricklayer_circuit(int n_qubits, int depth, GateKind kind) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("bricklayer_circuit: qubit count must be even and >= 2");
  }
  if (depth < 1) throw std::invalid_argument("bricklayer_circuit: depth must be >= 1");
  Circuit c(n_qubits);
  const std::vector<double> zeros(15, 0.0);
  auto place = [&](int q) {
    if (kind == GateKind::sun) {
      c.add(SUNGate(AlgebraElement::full(2), {q, q + 1}));
    } else {
      c.add(su4_decomposed_gate(q, q + 1, zeros));
    }
  };
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q + 1 < n_qubits; q += 2) place(q);
    for (int q = 1; q + 1 < n_qubits; q += 2) place(q);
  }
  return c;
}

std::vector<double> estimate_gradient(const VariationalProblem& problem,
                                      const GradientOptions& options, std::mt19937_64& rng) {
  if (options.method == GradientMethod::exact) return circuit_gradient(problem);
  const Backend backend =
      options.shots > 0 ? Backend::with_shots(options.shots, rng) : Backend::exact();
  std::vector<double> grad;
  grad.reserve(problem.circuit.parameter_count());
  for (std::size_t g = 0; g < problem.circuit.gates.size(); ++g) {
    const auto& op = problem.circuit.gates[g];
    const std::size_t k = operation_parameter_count(op);
    if (k == 0) continue;
    if (options.method == GradientMethod::finite_diff) {
      for (std::size_t l = 0; l < k; ++l) {
        grad.push_back(finite_difference_derivative(problem, g, l, options.fd_delta, backend).value);
      }
      continue;
    }
    if (const auto* product = std::get_if<ProductGate>(&op)) {
      for (std::size_t l = 0; l < k; ++l) {
        auto shifted = [&](double offset) {
          Circuit c = problem.circuit;
          std::get<ProductGate>(c.gates[g]).params[l] = product->params[l] + offset;
          return backend.evaluate(run_circuit(c, problem.initial), problem.observable).value;
        };
        grad.push_back(shifted(std::numbers::pi / 4.0) - shifted(-std::numbers::pi / 4.0));
      }
      continue;
    }
    switch (options.method) {
      case GradientMethod::gpsr:
        for (std::size_t l = 0; l < k; ++l) grad.push_back(gpsr_derivative(problem, g, l, backend).value);
        break;
      case GradientMethod::pauli_shift:
        for (const auto& e : pauli_shift_gradient(problem, g, backend)) grad.push_back(e.value);
        break;
      case GradientMethod::stochastic:
        for (std::size_t l = 0; l < k; ++l) {
          grad.push_back(
              stochastic_derivative(problem, g, l, options.stochastic_samples, backend, rng).value);
        }
        break;
      default:
        break;
    }
  }
  return grad;
}

Trajectory gradient_descent(Circuit circuit, const Observable& h, const StateVector& initial,
                            std::vector<double> theta0, const DescentOptions& options) {
  if (!(options.learning_rate > 0.0)) throw std::invalid_argument("gradient_descent: eta must be > 0");
  if (options.steps < 0) throw std::invalid_argument("gradient_descent: negative step count");
  if (theta0.size() != circuit.parameter_count()) {
    throw std::invalid_argument("gradient_descent: theta0 has " + std::to_string(theta0.size()) +
                                " entries, circuit has " +
                                std::to_string(circuit.parameter_count()) + " parameters");
  }
  Trajectory traj;
  const auto& spectrum = h.spectrum().eigenvalues;
  traj.e_min = spectrum(0);
  traj.e_max = spectrum(spectrum.size() - 1);

  std::mt19937_64 rng(options.seed);
  std::vector<double> theta = std::move(theta0);
  circuit.set_parameters(theta);
  VariationalProblem problem{std::move(circuit), initial, h};
  for (int step = 0;; ++step) {
    const double e = cost(problem);
    if (!std::isfinite(e)) {
      throw std::runtime_error("gradient_descent: non-finite cost at step " + std::to_string(step));
    }
    traj.energies.push_back(e);
    traj.normalized.push_back(normalize_energy(e, traj.e_min, traj.e_max));
    if (options.record_parameters) traj.parameters.push_back(theta);
    if (step == options.steps) break;
    const auto grad = estimate_gradient(problem, options.gradient, rng);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= options.learning_rate * grad[i];
    problem.circuit.set_parameters(theta);
  }
  return traj;
}

void ExperimentConfig::validate() const {
  if (n_qubits < 2 || n_qubits % 2 != 0) throw std::invalid_argument("qubits must be even and >= 2");
  if (n_qubits > kMaxDenseQubits) throw std::invalid_argument("qubits exceeds the dense simulation limit");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (n_instances < 1) throw std::invalid_argument("instances must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("lr must be > 0");
  if (gradient.shots < 0) throw std::invalid_argument("shots must be >= 0");
  if (!(gradient.fd_delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (gradient.stochastic_samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init_scale must be >= 0");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "qubits") cfg.n_qubits = parse_int(key, value);
    else if (key == "depth") cfg.depth = parse_int(key, value);
    else if (key == "instances") cfg.n_instances = parse_int(key, value);
    else if (key == "steps") cfg.steps = parse_int(key, value);
    else if (key == "lr") cfg.learning_rate = parse_double(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "method") cfg.gradient.method = parse_gradient_method(value);
    else if (key == "shots") cfg.gradient.shots = parse_int(key, value);
    else if (key == "delta") cfg.gradient.fd_delta = parse_double(key, value);
    else if (key == "samples") cfg.gradient.stochastic_samples = parse_int(key, value);
    else if (key == "init_scale") cfg.init_scale = parse_double(key, value);
    else if (key == "threads") cfg.threads = parse_int(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

double InstanceResult::final_delta() const {
  return sun.normalized.back() - decomposed.normalized.back();
}

double sign_test_p_value(int k, int n) {
  if (n < 0 || k < 0) throw std::invalid_argument("sign_test_p_value: negative count");
  double p = 0.0;
  for (int j = std::max(k, 0); j <= n; ++j) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) -
                  n * std::numbers::ln2);
  }
  return std::min(p, 1.0);
}

ComparisonResult comparison_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ComparisonResult result;
  result.config = cfg;
  result.instances.resize(static_cast<std::size_t>(cfg.n_instances));

  const Circuit sun_circuit = bricklayer_circuit(cfg.n_qubits, cfg.depth, GateKind::sun);
  const Circuit dec_circuit = bricklayer_circuit(cfg.n_qubits, cfg.depth, GateKind::decomposed);
  const StateVector zero = StateVector::zero(cfg.n_qubits);

  auto run_instance = [&](int i) {
    std::mt19937_64 rng = instance_rng(cfg.seed, i);
    const Observable h(sample_gue(1 << cfg.n_qubits, rng));
    std::normal_distribution<double> normal(0.0, cfg.init_scale);
    std::vector<double> theta0(sun_circuit.parameter_count());
    for (auto& t : theta0) t = normal(rng);
    DescentOptions opts;
    opts.learning_rate = cfg.learning_rate;
    opts.steps = cfg.steps;
    opts.gradient = cfg.gradient;
    opts.seed = rng();
    opts.record_parameters = false;
    InstanceResult& out = result.instances[static_cast<std::size_t>(i)];
    out.sun = gradient_descent(sun_circuit, h, zero, theta0, opts);
    out.decomposed = gradient_descent(dec_circuit, h, zero, theta0, opts);
    out.sun.instance = out.decomposed.instance = i;
  };

  const int workers = std::min(cfg.threads, cfg.n_instances);
  if (workers <= 1) {
    for (int i = 0; i < cfg.n_instances; ++i) run_instance(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (int i = next++; i < cfg.n_instances; i = next++) run_instance(i);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const auto n_points = static_cast<std::size_t>(cfg.steps) + 1;
  const double n = cfg.n_instances;
  result.mean_delta.assign(n_points, 0.0);
  result.stderr_delta.assign(n_points, 0.0);
  for (std::size_t k = 0; k < n_points; ++k) {
    double mean = 0.0;
    for (const auto& inst : result.instances) mean += inst.sun.normalized[k] - inst.decomposed.normalized[k];
    mean /= n;
    double ss = 0.0;
    for (const auto& inst : result.instances) {
      const double d = inst.sun.normalized[k] - inst.decomposed.normalized[k] - mean;
      ss += d * d;
    }
    result.mean_delta[k] = mean;
    result.stderr_delta[k] = cfg.n_instances > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  }
  for (const auto& inst : result.instances) {
    if (inst.final_delta() < 0.0) ++result.negative_final;
  }
  result.sign_test_p = sign_test_p_value(result.negative_final, cfg.n_instances);
  return result;
}

void write_aggregate_csv(std::ostream& out, const ComparisonResult& r) {
  out << "step,mean_delta,stderr\n";
  const auto old = out.precision(17);
  for (std::size_t k = 0; k < r.mean_delta.size(); ++k) {
    out << k << ',' << r.mean_delta[k] << ',' << r.stderr_delta[k] << '\n';
  }
  out.precision(old);
}

void write_instance_csv(std::ostream& out, const InstanceResult& r) {
  out << "step,E_sun,Ebar_sun,E_decomposed,Ebar_decomposed\n";
  const auto old = out.precision(17);
  for (std::size_t k = 0; k < r.sun.energies.size(); ++k) {
    out << k << ',' << r.sun.energies[k] << ',' << r.sun.normalized[k] << ','
        << r.decomposed.energies[k] << ',' << r.decomposed.normalized[k] << '\n';
  }
  out.precision(old);
}

std::string to_string(BlochGate kind) { return kind == BlochGate::sun ? "sun" : "zyz"; }

BlochGate parse_bloch_gate(const std::string& s) {
  if (s == "sun") return BlochGate::sun;
  if (s == "zyz") return BlochGate::zyz;
  throw std::invalid_argument("unknown single-qubit gate '" + s + "' (expected sun|zyz)");
}

std::optional<int> BlochTrajectory::steps_to_reach(double threshold) const {
  for (std::size_t k = 0; k < costs.size(); ++k) {
    if (costs[k] < threshold) return static_cast<int>(k);
  }
  return std::nullopt;
}

BlochTrajectory bloch_trajectory(double a, BlochGate kind, double eta, int steps) {
  if (!(eta > 0.0)) throw std::invalid_argument("bloch_trajectory: eta must be > 0");
  if (steps < 0) throw std::invalid_argument("bloch_trajectory: negative step count");
  Circuit c(1);
  if (kind == BlochGate::sun) {
    c.add(SUNGate(AlgebraElement(parse_pauli_list("X,Y,Z"), {0.0, a, 0.0}), {0}));
  } else {
    c.add(zyz_gate(0, {0.0, a, 0.0}));
  }
  const Observable h = Observable::from_paulis({PauliTerm{Complex(-1.0, 0.0), PauliString::parse("Y")}});
  VariationalProblem problem{std::move(c), StateVector::zero(1), h};
  BlochTrajectory out;
  out.a = a;
  out.kind = kind;
  std::vector<double> theta = problem.circuit.parameters();
  for (int step = 0;; ++step) {
    const StateVector s = run_circuit(problem.circuit, problem.initial);
    const auto b = bloch_vector(s);
    out.bloch.push_back(b);
    out.costs.push_back(-b[1]);
    if (step == steps) break;
    const auto grad = circuit_gradient(problem);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= eta * grad[i];
    problem.circuit.set_parameters(theta);
  }
  return out;
}

std::vector<BlochTrajectory> bloch_trajectory_experiment(const std::vector<double>& a_values,
                                                         BlochGate kind, double eta, int steps) {
  std::vector<BlochTrajectory> out;
  for (double a : a_values) out.push_back(bloch_trajectory(a, kind, eta, steps));
  return out;
}

void write_bloch_csv(std::ostream& out, const std::vector<BlochTrajectory>& paths) {
  out << "step,a,gate,x,y,z,cost\n";
  const auto old = out.precision(17);
  for (const auto& p : paths) {
    for (std::size_t k = 0; k < p.costs.size(); ++k) {
      out << k << ',' << p.a << ',' << to_string(p.kind) << ',' << p.bloch[k][0] << ','
          << p.bloch[k][1] << ',' << p.bloch[k][2] << ',' << p.costs[k] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace sungrad
