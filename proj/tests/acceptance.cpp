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


// Acceptance run. One line per criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sungrad/cli.hpp"
#include "sungrad/dla.hpp"
#include "sungrad/grad.hpp"
#include "sungrad/opt.hpp"
#include "sungrad/speedlimit.hpp"

using namespace sungrad;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

VariationalProblem su2_problem(double a, double b, const Observable& h) {
  Circuit c(1);
  c.add(SUNGate(AlgebraElement(parse_pauli_list("X,Y"), {a, b}), {0}));
  return {c, StateVector::zero(1), h};
}

Observable random_qubit_hamiltonian(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return Observable(oracle::random_hermitian(2, rng));
}

std::vector<double> a_grid(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = kPi * k / (n - 1);
  return out;
}

constexpr double kBs[] = {0.5, 1.0, 2.0};

Outcome engine_equivalence() {
  const Observable h = random_qubit_hamiltonian(11);
  double gpsr_err = 0.0, pauli_err = 0.0;
  for (double b : kBs) {
    for (double a : a_grid(61)) {
      const VariationalProblem p = su2_problem(a, b, h);
      const auto exact = exact_gradient(p, 0);
      const auto pauli = pauli_shift_gradient(p, 0, Backend::exact());
      for (std::size_t l = 0; l < 2; ++l) {
        gpsr_err = std::max(gpsr_err, std::abs(gpsr_derivative(p, 0, l, Backend::exact()).value - exact[l]));
        pauli_err = std::max(pauli_err, std::abs(pauli[l].value - exact[l]));
      }
    }
  }
  return {gpsr_err <= 1e-8 && pauli_err <= 1e-8,
          fmt("max|gpsr-exact|=%.2e max|pauli-exact|=%.2e", gpsr_err, pauli_err)};
}

Outcome finite_difference_bias() {
  const Observable h = random_qubit_hamiltonian(11);
  double coarse = 0.0, fine = 0.0;
  for (double b : kBs) {
    for (double a : a_grid(61)) {
      const VariationalProblem p = su2_problem(a, b, h);
      const auto exact = exact_gradient(p, 0);
      for (std::size_t l = 0; l < 2; ++l) {
        coarse = std::max(coarse, std::abs(finite_difference_derivative(p, 0, l, 0.75, Backend::exact()).value - exact[l]));
        fine = std::max(fine, std::abs(finite_difference_derivative(p, 0, l, 1e-6, Backend::exact()).value - exact[l]));
      }
    }
  }
  return {coarse > 1e-3 && fine <= 1e-5, fmt("delta=0.75: %.2e  delta=1e-6: %.2e", coarse, fine)};
}

Outcome stochastic_unbiased() {
  const Observable h = random_qubit_hamiltonian(11);
  const int n = 10000;
  std::mt19937_64 s_rng(12);
  const VariationalProblem p = su2_problem(1.0, 2.0, h);
  const double exact = exact_gradient(p, 0)[0];
  const GradientEstimate est = stochastic_derivative(p, 0, 0, n, Backend::exact(), s_rng);
  const double z = std::abs(est.value - exact) / est.std_error;
  const double sd = est.std_error * std::sqrt(static_cast<double>(n));
  // commuting direction: every s gives the same circuit
  const GradientEstimate flat = stochastic_derivative(su2_problem(1.0, 0.0, h), 0, 0, 1000, Backend::exact(), s_rng);
  const double flat_var = std::pow(flat.std_error, 2) * 1000.0;
  return {z <= 4.0 && sd > 1e-3 && flat_var < 1e-20,
          fmt("|mean-exact|/se=%.2f sd=%.3e var(b=0)=%.1e", z, sd, flat_var)};
}

Outcome shot_noise_ordering() {
  const Observable h = random_qubit_hamiltonian(11);
  const int reps = 50;
  const std::vector<double> points{0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
  std::mt19937_64 shot_rng(13), s_rng(14);
  // 1000 shots per estimate: two circuits of 500 for gpsr and fd, 100 s-samples of two 5-shot circuits
  const Backend half = Backend::with_shots(500, shot_rng);
  const Backend tiny = Backend::with_shots(5, shot_rng);
  int wins = 0;
  std::string detail;
  for (double a : points) {
    const VariationalProblem p = su2_problem(a, 2.0, h);
    const auto exact = exact_gradient(p, 0);
    double mg = 0, ms = 0, mf = 0;
    for (int r = 0; r < reps; ++r) {
      for (std::size_t l = 0; l < 2; ++l) {
        mg += std::pow(gpsr_derivative(p, 0, l, half).value - exact[l], 2);
        ms += std::pow(stochastic_derivative(p, 0, l, 100, tiny, s_rng).value - exact[l], 2);
        mf += std::pow(finite_difference_derivative(p, 0, l, 0.75, half).value - exact[l], 2);
      }
    }
    const double scale = 1.0 / (2 * reps);
    mg *= scale;
    ms *= scale;
    mf *= scale;
    if (mg <= ms && mg <= mf) ++wins;
    detail += fmt("[%.2f: %.1e/%.1e/%.1e] ", a, mg, ms, mf);
  }
  return {wins >= 4, fmt("gpsr best at %d/5 points, mse gpsr/stoch/fd ", wins) + detail};
}

Outcome dla_table() {
  struct Row {
    std::vector<PauliString> gens;
    int g, h, roots;
  };
  const std::vector<Row> rows{{parse_pauli_list("X,Y"), 3, 1, 2},
                              {parse_pauli_list("XI,IX,ZZ"), 6, 2, 4},
                              {enumerate_basis(2), 15, 3, 12}};
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const RootData r = root_count(dla_closure(row.gens));
    ok = ok && r.dim_g == row.g && r.dim_h == row.h && r.n_roots == row.roots;
    detail += fmt("(%d,%d,%d) ", r.dim_g, r.dim_h, r.n_roots);
  }
  return {ok, detail};
}

SUNGate zero_gate(const std::vector<PauliString>& basis) {
  std::vector<int> support(static_cast<std::size_t>(basis.front().n_qubits()));
  for (std::size_t q = 0; q < support.size(); ++q) support[q] = static_cast<int>(q);
  return SUNGate(AlgebraElement(basis, std::vector<double>(basis.size(), 0.0)), support);
}

Outcome gap_bound() {
  std::mt19937_64 rng(15);
  std::string detail;
  int failed = 0;
  const std::pair<const char*, std::vector<PauliString>> table[] = {
      {"su2", parse_pauli_list("X,Y")}, {"tfim", parse_pauli_list("XI,IX,ZZ")}, {"su4", enumerate_basis(2)}};
  for (const auto& [name, gens] : table) {
    const GapBoundReport r = verify_gap_bound(zero_gate(gens), 200, rng);
    const int worst = *std::max_element(r.max_gaps.begin(), r.max_gaps.end());
    detail += fmt("%s R<=%d max R=%d; ", name, r.roots.gap_bound, worst);
    if (!r.passed()) ++failed;
  }
  int subset_failed = 0;
  std::uniform_int_distribution<int> qubits(1, 3), size(2, 4);
  for (int k = 0; k < 20; ++k) {
    auto basis = enumerate_basis(qubits(rng));
    std::shuffle(basis.begin(), basis.end(), rng);
    basis.erase(basis.begin() + std::min<std::ptrdiff_t>(std::ssize(basis), size(rng)), basis.end());
    const GapBoundReport r = verify_gap_bound(zero_gate(basis), 200, rng);
    if (!r.passed()) {
      ++subset_failed;
      const int worst = *std::max_element(r.max_gaps.begin(), r.max_gaps.end());
      detail += fmt("%s dim %zu%s R=%d>%d; ", format_pauli_list(basis).c_str(), r.dla.dim(),
                    r.dla.is_abelian() ? " abelian" : "", worst, r.roots.gap_bound);
    }
  }
  detail += fmt("random subsets violating: %d/20", subset_failed);
  return {failed == 0 && subset_failed == 0, detail};
}

Vec3 unit_axis(std::mt19937_64& rng) {
  const auto v = oracle::normal_vector(3, rng);
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Outcome speed_limit() {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double worst_excess = -1e9, worst_closed = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Vec3 p1 = unit_axis(rng), p2 = unit_axis(rng);
    const double t1 = angle(rng), t2 = angle(rng);
    const double closed = su2_compose(p1, t1, p2, t2).t;
    const double t_g = geodesic_time(su2_rotation(p2, t2) * su2_rotation(p1, t1)).t_g;
    worst_closed = std::max(worst_closed, std::abs(closed - t_g));
    worst_excess = std::max(worst_excess, t_g - t1 - t2);
  }
  const auto basis = enumerate_basis(2);
  for (int k = 0; k < 100; ++k) {
    const SUNGate a(AlgebraElement(basis, oracle::normal_vector(15, rng)), {0, 1});
    const SUNGate b(AlgebraElement(basis, oracle::normal_vector(15, rng)), {0, 1});
    const double t1 = angle(rng), t2 = angle(rng);
    worst_excess = std::max(worst_excess, geodesic_time(timed_evolution(b, t2) * timed_evolution(a, t1)).t_g - t1 - t2);
  }
  const double dt = decomposition_overhead({1, 0, 0}, kPi / 4, {0, 1, 0}, kPi / 4);
  return {worst_excess <= 1e-12 && worst_closed <= 1e-9 && std::abs(dt - kPi / 6) <= 1e-9,
          fmt("max(t_g-t1-t2)=%.2e closed-form err=%.1e dt-pi/6=%.1e", worst_excess, worst_closed, dt - kPi / 6)};
}

Outcome bias_surface_check() {
  std::mt19937_64 rng(17);
  double recon = 0.0, lo = 1e9, hi = -1e9;
  for (const auto& p : bias_surface(10000, rng)) {
    const oracle::Mat a = oracle::C(0, p.phi[0]) * oracle::pauli("X") + oracle::C(0, p.phi[1]) * oracle::pauli("Y") +
                          oracle::C(0, p.phi[2]) * oracle::pauli("Z");
    recon = std::max(recon, oracle::max_abs(oracle::expm(a) - zyz_unitary(p.theta[0], p.theta[1], p.theta[2])));
    lo = std::min(lo, p.norm);
    hi = std::max(hi, p.norm);
  }
  double sphere = 0.0;
  for (const auto& p : su2_surface(10000, rng)) sphere = std::max(sphere, std::abs(p.norm - 1.0));
  return {recon <= 1e-10 && hi - lo > 0.05 && sphere <= 1e-12,
          fmt("reconstruction %.1e, |phi| in [%.4f, %.4f], su2 surface dev %.1e", recon, lo, hi, sphere)};
}

Outcome optimization_comparison() {
  bool ok = true;
  std::string detail;
  for (int depth : {2, 3}) {
    ExperimentConfig cfg;
    cfg.n_qubits = 6;
    cfg.depth = depth;
    cfg.n_instances = 20;
    cfg.steps = 2000;
    cfg.learning_rate = 1e-3;
    cfg.seed = 2026;
    cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const ComparisonResult r = comparison_experiment(cfg);
    const double final_delta = r.mean_delta.back();
    ok = ok && final_delta < 0.0 && r.sign_test_p < 0.05;
    detail += fmt("depth %d: mean dE=%.4f (se %.4f), %d/20 negative, p=%.2e; ", depth, final_delta,
                  r.stderr_delta.back(), r.negative_final, r.sign_test_p);
  }
  return {ok, detail};
}

Outcome bloch() {
  const int steps = 5000;
  const BlochTrajectory sun = bloch_trajectory(kPi / 64, BlochGate::sun, 1e-2, steps);
  const BlochTrajectory zyz = bloch_trajectory(kPi / 64, BlochGate::zyz, 1e-2, steps);
  const auto ns = sun.steps_to_reach(-0.99), nz = zyz.steps_to_reach(-0.99);
  const bool slower = ns && (!nz || *nz > *ns);
  const BlochTrajectory sun_half = bloch_trajectory(kPi / 2, BlochGate::sun, 1e-2, steps);
  const BlochTrajectory zyz_half = bloch_trajectory(kPi / 2, BlochGate::zyz, 1e-2, steps);
  const bool converge = sun_half.steps_to_reach(-0.999) && zyz_half.steps_to_reach(-0.999);
  auto count = [](const std::optional<int>& n) { return n ? std::to_string(*n) : std::string("never"); };
  return {slower && converge,
          "a=pi/64 steps to C<-0.99: su2 " + count(ns) + ", zyz " + count(nz) + fmt(" (of %d); ", steps) +
              "a=pi/2 to C<-0.999: su2 " + count(sun_half.steps_to_reach(-0.999)) + ", zyz " +
              count(zyz_half.steps_to_reach(-0.999))};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"gradcheck", "--qubits", "2", "--seed", "3", "--shots", "200", "--method", "stochastic", "--samples", "10"},
      {"gradcheck", "--qubits", "1", "--seed", "3", "--shots", "200", "--method", "gpsr"},
      {"shiftrule", "--gens", "XI,IX,ZZ", "--seed", "4"},
      {"dla", "--gens", "XI,IX,ZZ", "--seed", "5", "--samples", "20"},
      {"speedlimit", "--seed", "6"},
      {"bias-surface", "--seed", "7", "--samples", "2000"},
      {"bias-surface", "--seed", "7", "--samples", "200", "--gate", "sun"},
      {"trajectories", "--steps", "100", "--gate", "zyz"},
      {"optimize", "--seed", "8", "--qubits", "4", "--depth", "1", "--instances", "3", "--steps", "20", "--threads", "2"},
  };
  const fs::path root = fs::temp_directory_path() / "sungrad_acceptance";
  int bad = 0;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string out[2];
    std::map<std::string, std::string> files[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = root / fmt("%zu_%d", i, k);
      fs::remove_all(dir);
      auto args = commands[i];
      args.insert(args.end(), {"--out", dir.string()});
      std::ostringstream o, e;
      codes[k] = dispatch(args, o, e);
      out[k] = o.str();
      files[k] = read_dir(dir);
    }
    if (codes[0] != 0 || codes[1] != 0 || out[0] != out[1] || files[0] != files[1] || files[0].empty()) {
      ++bad;
      detail += commands[i][0] + " differs; ";
    }
  }
  fs::remove_all(root);
  return {bad == 0, detail + fmt("%zu commands rerun, %d mismatched", commands.size(), bad)};
}

}  // namespace

int main(int argc, char** argv) {
  // optional criterion ids; default runs all
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "gradient-engine equivalence", 10, engine_equivalence},
      {2, "finite-difference bias", 10, finite_difference_bias},
      {3, "stochastic rule unbiased", 30, stochastic_unbiased},
      {4, "shot-noise ordering", 300, shot_noise_ordering},
      {5, "DLA table", 1, dla_table},
      {6, "gap bound R <= |roots|/2", 120, gap_bound},
      {7, "geodesic triangle inequality", 30, speed_limit},
      {8, "ZYZ bias surface", 10, bias_surface_check},
      {9, "SU(N) vs decomposed optimization", 1800, optimization_comparison},
      {10, "Bloch trajectories", 10, bloch},
      {11, "CLI determinism", 600, cli_determinism},
  };
  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %2d %-34s %s  (%.2fs of %.0fs%s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                c.budget_s, in_time ? "" : ", over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria failed\n", failures, ran);
  return failures == 0 ? 0 : 1;
}
