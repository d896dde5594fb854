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

#include "sungrad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sungrad/dla.hpp"
#include "sungrad/error.hpp"
#include "sungrad/grad.hpp"
#include "sungrad/io.hpp"
#include "sungrad/opt.hpp"
#include "sungrad/speedlimit.hpp"

namespace sungrad {

namespace {

/// Raised for bad flag values discovered after parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

using Config = std::map<std::string, std::string>;

class Output {
 public:
  explicit Output(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }

  void write(const std::string& name, const std::string& content) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
  }

 private:
  std::string dir_;
};

std::string with_header(const Config& cfg, const std::string& body) {
  std::ostringstream s;
  write_header(s, cfg);
  s << body;
  return s.str();
}

Json json_with_meta(const Config& cfg, Json body) {
  Json meta = {{"version", version()}, {"config", cfg}};
  Json out = {{"_meta", meta}};
  out.update(body);
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw UsageError("not a number list: '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

std::vector<PauliString> resolve_gens(const std::string& gens, int qubits) {
  if (!gens.empty()) return parse_pauli_list(gens);
  if (qubits < 1 || qubits > 4) throw UsageError("--qubits must be in [1, 4] for a dense gate");
  auto basis = enumerate_basis(qubits);
  return basis;
}

std::string join_gens(const std::vector<PauliString>& gens) { return format_pauli_list(gens); }

struct Common {
  int qubits = 1;
  int depth = 2;
  int steps = 0;
  double lr = 0.0;
  int shots = 0;
  std::uint64_t seed = 0;
  std::string method;
  double delta = 0.0;
  std::string out;
  std::string gens;
  std::string gate;
  std::string theta;
  int samples = 0;
  int instances = 0;
  int threads = 1;
  std::string config;
  bool paper_scale = false;
};

SUNGate gate_for(const std::vector<PauliString>& gens, const std::string& theta_text,
                 std::optional<std::uint64_t> seed) {
  std::vector<double> theta;
  if (!theta_text.empty()) {
    theta = parse_number_list(theta_text);
    if (theta.size() != gens.size()) {
      throw UsageError("--theta has " + std::to_string(theta.size()) + " entries, need " +
                       std::to_string(gens.size()));
    }
  } else {
    if (!seed) throw UsageError("--seed is required when --theta is not given");
    std::mt19937_64 rng(*seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < gens.size(); ++i) theta.push_back(normal(rng));
  }
  const int n = gens.front().n_qubits();
  std::vector<int> support(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) support[static_cast<std::size_t>(q)] = q;
  return SUNGate(AlgebraElement(gens, theta), support);
}

int run_gradcheck(const Common& o, std::ostream& out) {
  const auto gens = resolve_gens(o.gens, o.qubits);
  const SUNGate gate = gate_for(gens, o.theta, o.seed);
  const int n = gens.front().n_qubits();
  std::mt19937_64 h_rng(o.seed);
  h_rng.discard(1000);
  Circuit c(n);
  c.add(gate);
  VariationalProblem problem{c, StateVector::zero(n), Observable(sample_gue(1 << n, h_rng))};

  std::vector<GradientMethod> methods;
  if (o.method.empty()) {
    methods = {GradientMethod::gpsr, GradientMethod::pauli_shift, GradientMethod::stochastic,
               GradientMethod::finite_diff};
  } else {
    methods = {parse_gradient_method(o.method)};
  }
  if (o.shots < 0) throw UsageError("--shots must be >= 0");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  if (!(o.delta > 0.0)) throw UsageError("--delta must be > 0");

  Config cfg{{"subcommand", "gradcheck"},
             {"gens", join_gens(gens)},
             {"theta", fmt_list(gate.generator.coefficients())},
             {"seed", std::to_string(o.seed)},
             {"shots", std::to_string(o.shots)},
             {"delta", fmt(o.delta)},
             {"samples", std::to_string(o.samples)},
             {"method", o.method.empty() ? "all" : o.method}};

  const auto exact = exact_gradient(problem, 0);
  std::mt19937_64 rng(o.seed + 1);
  const Backend backend = o.shots > 0 ? Backend::with_shots(o.shots, rng) : Backend::exact();
  std::vector<GradientReportRow> rows;
  for (std::size_t l = 0; l < exact.size(); ++l) rows.push_back({"exact", l, {exact[l], 0.0, 0}, 0});
  std::vector<std::pair<std::string, double>> max_err;
  for (auto m : methods) {
    std::vector<GradientEstimate> est;
    switch (m) {
      case GradientMethod::exact:
        for (double v : exact) est.push_back({v, 0.0, 0});
        break;
      case GradientMethod::gpsr:
        for (std::size_t l = 0; l < exact.size(); ++l) est.push_back(gpsr_derivative(problem, 0, l, backend));
        break;
      case GradientMethod::pauli_shift:
        est = pauli_shift_gradient(problem, 0, backend);
        break;
      case GradientMethod::stochastic:
        for (std::size_t l = 0; l < exact.size(); ++l) {
          est.push_back(stochastic_derivative(problem, 0, l, o.samples, backend, rng));
        }
        break;
      case GradientMethod::finite_diff:
        for (std::size_t l = 0; l < exact.size(); ++l) {
          est.push_back(finite_difference_derivative(problem, 0, l, o.delta, backend));
        }
        break;
    }
    double worst = 0.0;
    for (std::size_t l = 0; l < est.size(); ++l) {
      worst = std::max(worst, std::abs(est[l].value - exact[l]));
      rows.push_back({to_string(m), l, est[l], o.shots});
    }
    max_err.emplace_back(to_string(m), worst);
  }
  std::ostringstream body;
  write_gradient_csv(body, rows);
  const std::string csv = with_header(cfg, body.str());
  Output(o.out).write("gradcheck.csv", csv);
  out << csv;
  for (const auto& [name, err] : max_err) out << "# max |" << name << " - exact| = " << fmt(err) << '\n';
  return 0;
}

int run_shiftrule(const Common& o, std::ostream& out) {
  const auto gens = resolve_gens(o.gens, o.qubits);
  std::optional<std::uint64_t> seed;
  if (o.seed != 0 || o.theta.empty()) seed = o.seed;
  const SUNGate gate = gate_for(gens, o.theta, seed);
  Config cfg{{"subcommand", "shiftrule"},
             {"gens", join_gens(gens)},
             {"theta", fmt_list(gate.generator.coefficients())}};
  Json params = Json::array();
  for (const auto& omega : effective_generators(gate)) {
    const SpectralGapSet gaps = spectral_gaps(omega);
    Json entry = {{"parameter", omega.parameter_index}, {"gaps", gaps.gaps}};
    out << "parameter " << omega.parameter_index << ": R = " << gaps.count();
    if (gaps.count() > 0) {
      try {
        const ShiftRule rule = make_shift_rule(gaps);
        entry["shifts"] = rule.shifts;
        entry["weights"] = rule.weights;
        entry["condition_number"] = rule.condition_number;
        entry["variance_factor"] = rule.variance_factor();
        out << ", circuits = " << 2 * gaps.count() << ", cond = " << fmt(rule.condition_number);
      } catch (const DegenerateRuleError& e) {
        entry["error"] = e.what();
        out << ", degenerate rule";
      }
    }
    out << "\n  gaps = [" << fmt_list(gaps.gaps) << "]\n";
    params.push_back(std::move(entry));
  }
  Output(o.out).write("shiftrule.json", json_with_meta(cfg, {{"parameters", params}}).dump(2) + "\n");
  return 0;
}

int run_dla(const Common& o, std::ostream& out) {
  if (o.gens.empty()) throw UsageError("dla requires --gens");
  const auto gens = parse_pauli_list(o.gens);
  const DLA d = dla_closure(gens);
  const RootData roots = root_count(d);
  const std::string label = cartan_label(d);
  Config cfg{{"subcommand", "dla"}, {"gens", join_gens(gens)}};
  out << "generators: " << join_gens(gens) << '\n'
      << "basis: " << join_gens(d.basis) << '\n'
      << "dim g = " << roots.dim_g << '\n'
      << "dim h = " << roots.dim_h << " (" << label << ")\n"
      << "|Phi| = " << roots.n_roots << '\n'
      << "R bound = " << roots.gap_bound << " (conditional)\n";
  Json basis = Json::array();
  for (const auto& p : d.basis) basis.push_back(p.str());
  Json cartan = Json::array();
  for (const auto& p : cartan_basis(d)) cartan.push_back(p.str());
  Json report = {{"basis", basis},         {"cartan", cartan},
                 {"dim_g", roots.dim_g},   {"dim_h", roots.dim_h},
                 {"n_roots", roots.n_roots}, {"gap_bound", roots.gap_bound},
                 {"cartan_label", label}};
  if (o.samples > 0 && gens.front().n_qubits() <= 4) {
    cfg["seed"] = std::to_string(o.seed);
    cfg["samples"] = std::to_string(o.samples);
    std::mt19937_64 rng(o.seed);
    std::vector<int> support(static_cast<std::size_t>(gens.front().n_qubits()));
    for (std::size_t q = 0; q < support.size(); ++q) support[q] = static_cast<int>(q);
    const SUNGate gate(AlgebraElement(gens, std::vector<double>(gens.size(), 0.0)), support);
    const GapBoundReport check = verify_gap_bound(gate, o.samples, rng);
    int observed = 0;
    for (int r : check.max_gaps) observed = std::max(observed, r);
    out << "observed max R = " << observed << " over " << o.samples << " samples: "
        << (check.passed() ? "pass" : "FAIL") << '\n';
    report["verification"] = {{"samples", o.samples},
                              {"max_gaps", check.max_gaps},
                              {"violations", check.violations},
                              {"offending_theta", check.offending_theta},
                              {"passed", check.passed()}};
  }
  Output(o.out).write("dla.json", json_with_meta(cfg, report).dump(2) + "\n");
  return 0;
}

int run_speedlimit(const Common& o, std::ostream& out) {
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  auto axis = [&] {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& x : v) x /= n;
    return v;
  };
  std::vector<OverheadRow> rows;
  double worst = INFINITY;
  for (int s = 0; s < o.samples; ++s) {
    const Vec3 p1 = axis();
    const Vec3 p2 = axis();
    const double t1 = angle(rng);
    const double t2 = angle(rng);
    const SU2Rotation r = su2_compose(p1, t1, p2, t2);
    OverheadRow row{t1, t2, p1[0] * p2[0] + p1[1] * p2[1] + p1[2] * p2[2], r.t, t1 + t2 - r.t};
    worst = std::min(worst, row.overhead);
    rows.push_back(row);
  }
  Config cfg{{"subcommand", "speedlimit"}, {"seed", std::to_string(o.seed)},
             {"samples", std::to_string(o.samples)}};
  std::ostringstream body;
  write_overhead_csv(body, rows);
  Output(o.out).write("overhead.csv", with_header(cfg, body.str()));
  const double ortho = decomposition_overhead({1, 0, 0}, std::numbers::pi / 4, {0, 1, 0}, std::numbers::pi / 4);
  out << "pairs: " << o.samples << '\n'
      << "min delta_t = " << fmt(worst) << '\n'
      << "orthogonal pi/4 + pi/4: delta_t = " << fmt(ortho) << '\n';
  return 0;
}

int run_bias_surface(const Common& o, std::ostream& out) {
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  const BlochGate kind = parse_bloch_gate(o.gate.empty() ? "zyz" : o.gate);
  std::mt19937_64 rng(o.seed);
  const auto points = kind == BlochGate::zyz ? bias_surface(o.samples, rng) : su2_surface(o.samples, rng);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : points) {
    lo = std::min(lo, p.norm);
    hi = std::max(hi, p.norm);
  }
  Config cfg{{"subcommand", "bias-surface"}, {"gate", to_string(kind)},
             {"seed", std::to_string(o.seed)}, {"samples", std::to_string(o.samples)}};
  std::ostringstream body;
  write_bias_csv(body, points);
  Output(o.out).write("bias_surface.csv", with_header(cfg, body.str()));
  out << "samples: " << points.size() << '\n'
      << "min |phi| = " << fmt(lo) << '\n'
      << "max |phi| = " << fmt(hi) << '\n';
  return 0;
}

int run_trajectories(const Common& o, std::ostream& out) {
  std::vector<double> a_values;
  if (o.theta.empty()) {
    const double pi = std::numbers::pi;
    a_values = {pi / 64, pi / 8, 2 * pi / 8, 3 * pi / 8, pi / 2};
  } else {
    a_values = parse_number_list(o.theta);
  }
  std::vector<BlochGate> kinds;
  if (o.gate.empty()) kinds = {BlochGate::sun, BlochGate::zyz};
  else kinds = {parse_bloch_gate(o.gate)};
  if (o.steps < 1) throw UsageError("--steps must be >= 1");
  if (!(o.lr > 0.0)) throw UsageError("--lr must be > 0");

  std::vector<BlochTrajectory> paths;
  for (auto kind : kinds) {
    for (auto& p : bloch_trajectory_experiment(a_values, kind, o.lr, o.steps)) paths.push_back(std::move(p));
  }
  Config cfg{{"subcommand", "trajectories"}, {"a", fmt_list(a_values)},
             {"gate", o.gate.empty() ? "sun,zyz" : o.gate}, {"lr", fmt(o.lr)},
             {"steps", std::to_string(o.steps)}};
  std::ostringstream body;
  write_bloch_csv(body, paths);
  Output(o.out).write("trajectories.csv", with_header(cfg, body.str()));
  out << "gate,a,final_cost,steps_to_0.99\n";
  for (const auto& p : paths) {
    const auto hit = p.steps_to_reach(-0.99);
    out << to_string(p.kind) << ',' << fmt(p.a) << ',' << fmt(p.costs.back()) << ','
        << (hit ? std::to_string(*hit) : "none") << '\n';
  }
  return 0;
}

int run_optimize(const Common& o, const std::map<std::string, bool>& given, std::ostream& out) {
  ExperimentConfig cfg;
  if (o.paper_scale) {
    cfg.n_qubits = 10;
    cfg.depth = 2;
    cfg.n_instances = 50;
    cfg.steps = 100000;
  }
  if (!o.config.empty()) {
    std::ifstream f(o.config);
    if (!f) throw UsageError("cannot read config file " + o.config);
    apply_config(cfg, parse_key_value(f));
  }
  auto has = [&](const char* k) { return given.at(k); };
  if (has("qubits")) cfg.n_qubits = o.qubits;
  if (has("depth")) cfg.depth = o.depth;
  if (has("steps")) cfg.steps = o.steps;
  if (has("lr")) cfg.learning_rate = o.lr;
  if (has("instances")) cfg.n_instances = o.instances;
  if (has("method")) cfg.gradient.method = parse_gradient_method(o.method);
  if (has("shots")) cfg.gradient.shots = o.shots;
  if (has("delta")) cfg.gradient.fd_delta = o.delta;
  if (has("samples")) cfg.gradient.stochastic_samples = o.samples;
  if (has("threads")) cfg.threads = o.threads;
  cfg.seed = o.seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Config resolved{{"subcommand", "optimize"},
                  {"qubits", std::to_string(cfg.n_qubits)},
                  {"depth", std::to_string(cfg.depth)},
                  {"instances", std::to_string(cfg.n_instances)},
                  {"steps", std::to_string(cfg.steps)},
                  {"lr", fmt(cfg.learning_rate)},
                  {"seed", std::to_string(cfg.seed)},
                  {"method", to_string(cfg.gradient.method)},
                  {"shots", std::to_string(cfg.gradient.shots)},
                  {"delta", fmt(cfg.gradient.fd_delta)},
                  {"samples", std::to_string(cfg.gradient.stochastic_samples)},
                  {"init_scale", fmt(cfg.init_scale)}};
  const ComparisonResult r = comparison_experiment(cfg);
  std::ostringstream agg;
  write_aggregate_csv(agg, r);
  const Output files(o.out);
  files.write("aggregate.csv", with_header(resolved, agg.str()));
  for (const auto& inst : r.instances) {
    std::ostringstream body;
    write_instance_csv(body, inst);
    std::ostringstream name;
    name << "instance_" << std::setw(3) << std::setfill('0') << inst.sun.instance << ".csv";
    Config per = resolved;
    per["instance"] = std::to_string(inst.sun.instance);
    files.write(name.str(), with_header(per, body.str()));
  }
  out << "final mean delta = " << fmt(r.mean_delta.back()) << " +- " << fmt(r.stderr_delta.back()) << '\n'
      << "instances with delta < 0: " << r.negative_final << '/' << cfg.n_instances << '\n'
      << "sign test p = " << fmt(r.sign_test_p) << '\n';
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentiation and analysis of SU(N) parameterized gates", "sungrad"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Common o;
  std::map<std::string, CLI::Option*> tracked;
  auto add_common = [&](CLI::App* sub, std::initializer_list<std::string> flags) {
    for (const auto& f : flags) {
      CLI::Option* opt = nullptr;
      if (f == "qubits") opt = sub->add_option("--qubits", o.qubits, "Number of qubits");
      else if (f == "depth") opt = sub->add_option("--depth", o.depth, "Brick-layer depth");
      else if (f == "steps") opt = sub->add_option("--steps", o.steps, "Gradient steps");
      else if (f == "lr") opt = sub->add_option("--lr", o.lr, "Learning rate");
      else if (f == "shots") opt = sub->add_option("--shots", o.shots, "Shots per circuit (0 = exact)");
      else if (f == "seed") opt = sub->add_option("--seed", o.seed, "RNG seed");
      else if (f == "method") opt = sub->add_option("--method", o.method, "exact|gpsr|stochastic|fd|pauli");
      else if (f == "delta") opt = sub->add_option("--delta", o.delta, "Finite-difference step");
      else if (f == "out") opt = sub->add_option("--out", o.out, "Output directory");
      else if (f == "gens") opt = sub->add_option("--gens", o.gens, "Comma-separated Pauli strings");
      else if (f == "gate") opt = sub->add_option("--gate", o.gate, "sun|zyz|decomposed");
      else if (f == "theta") opt = sub->add_option("--theta", o.theta, "Comma-separated parameters");
      else if (f == "samples") opt = sub->add_option("--samples", o.samples, "Sample count");
      else if (f == "instances") opt = sub->add_option("--instances", o.instances, "Hamiltonian instances");
      else if (f == "threads") opt = sub->add_option("--threads", o.threads, "Worker threads");
      else if (f == "config") opt = sub->add_option("--config", o.config, "key=value config file");
      else if (f == "paper-scale") opt = sub->add_flag("--paper-scale", o.paper_scale, "10 qubits, 50 instances, 1e5 steps");
      tracked[sub->get_name() + ":" + f] = opt;
    }
  };

  auto* gradcheck = app.add_subcommand("gradcheck", "Compare gradient estimators against the exact gradient");
  add_common(gradcheck, {"qubits", "seed", "method", "shots", "delta", "samples", "gens", "theta", "out"});
  auto* shiftrule = app.add_subcommand("shiftrule", "Spectral gaps and shift rules of a gate");
  add_common(shiftrule, {"qubits", "seed", "gens", "theta", "out"});
  auto* dla = app.add_subcommand("dla", "Dynamical Lie algebra, Cartan dimension and gap bound");
  add_common(dla, {"gens", "seed", "samples", "out"});
  auto* speed = app.add_subcommand("speedlimit", "Decomposition overhead of random SU(2) pairs");
  add_common(speed, {"seed", "samples", "out"});
  auto* bias = app.add_subcommand("bias-surface", "Canonical coordinates of ZYZ or SU(2) gates");
  add_common(bias, {"seed", "samples", "gate", "out"});
  auto* traj = app.add_subcommand("trajectories", "Bloch-sphere optimization paths");
  add_common(traj, {"gate", "theta", "lr", "steps", "out"});
  auto* optimize = app.add_subcommand("optimize", "SU(N) vs decomposed brick-layer optimization");
  add_common(optimize, {"qubits", "depth", "steps", "lr", "shots", "seed", "method", "delta",
                        "samples", "instances", "threads", "config", "paper-scale", "out"});

  for (auto* sub : {gradcheck, speed, bias, optimize}) tracked[sub->get_name() + ":seed"]->required();

  // subcommand defaults
  o.delta = 1e-6;
  o.samples = 100;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  auto given = [&](const char* flag) {
    auto it = tracked.find(name + ":" + flag);
    return it != tracked.end() && it->second->count() > 0;
  };
  try {
    if (name == "gradcheck") return run_gradcheck(o, out);
    if (name == "shiftrule") {
      if (!given("seed") && o.theta.empty()) throw UsageError("shiftrule needs --theta or --seed");
      return run_shiftrule(o, out);
    }
    if (name == "dla") {
      if (!given("samples")) o.samples = 0;
      else if (!given("seed")) throw UsageError("--samples needs --seed");
      return run_dla(o, out);
    }
    if (name == "speedlimit") {
      if (!given("samples")) o.samples = 500;
      return run_speedlimit(o, out);
    }
    if (name == "bias-surface") {
      if (!given("samples")) o.samples = 10000;
      return run_bias_surface(o, out);
    }
    if (name == "trajectories") {
      if (!given("lr")) o.lr = 1e-2;
      if (!given("steps")) o.steps = 500;
      return run_trajectories(o, out);
    }
    std::map<std::string, bool> flags;
    for (const char* f : {"qubits", "depth", "steps", "lr", "instances", "method", "shots",
                          "delta", "samples", "threads"}) {
      flags[f] = given(f);
    }
    return run_optimize(o, flags, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sungrad
