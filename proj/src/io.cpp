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

#include "sungrad/io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace sungrad {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Json steps_to_json(const ProductGate& g) {
  Json steps = Json::array();
  for (const auto& step : g.steps) {
    if (const auto* r = std::get_if<RotationStep>(&step)) {
      steps.push_back({{"axis", r->axis.str()}, {"parameter", r->parameter}});
    } else {
      steps.push_back({{"matrix", matrix_to_json(std::get<FixedStep>(step).matrix)}});
    }
  }
  return steps;
}

}  // namespace

const char* version() { return SUNGRAD_VERSION; }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix: entries must be [re, im]");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json gate_to_json(const SUNGate& g) {
  Json basis = Json::array();
  for (const auto& p : g.generator.basis()) basis.push_back(p.str());
  return {{"support", g.support}, {"basis", basis}, {"theta", g.generator.coefficients()}};
}

SUNGate gate_from_json(const Json& j) {
  try {
    std::vector<PauliString> basis;
    for (const auto& s : j.at("basis")) basis.push_back(PauliString::parse(s.get<std::string>()));
    return SUNGate(AlgebraElement(std::move(basis), j.at("theta").get<std::vector<double>>()),
                   j.at("support").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("gate: ") + e.what());
  }
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const auto& op : c.gates) {
    if (const auto* s = std::get_if<SUNGate>(&op)) {
      Json g = {{"type", "sun"}};
      g.update(gate_to_json(*s));
      gates.push_back(std::move(g));
    } else if (const auto* p = std::get_if<ProductGate>(&op)) {
      gates.push_back({{"type", "product"},
                       {"support", p->support},
                       {"steps", steps_to_json(*p)},
                       {"params", p->params}});
    } else {
      const auto& f = std::get<FixedGate>(op);
      gates.push_back({{"type", "fixed"}, {"support", f.support}, {"unitary", matrix_to_json(f.unitary)}});
    }
  }
  return {{"n_qubits", c.n_qubits}, {"gates", gates}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    Circuit c(j.at("n_qubits").get<int>());
    for (const auto& g : j.at("gates")) {
      const std::string type = g.value("type", "sun");
      if (type == "sun") {
        c.add(gate_from_json(g));
      } else if (type == "product") {
        ProductGate p;
        p.support = g.at("support").get<std::vector<int>>();
        p.params = g.at("params").get<std::vector<double>>();
        for (const auto& s : g.at("steps")) {
          if (s.contains("axis")) {
            const auto index = s.at("parameter").get<std::size_t>();
            if (index >= p.params.size()) throw std::invalid_argument("circuit: step parameter out of range");
            p.steps.emplace_back(RotationStep{PauliString::parse(s.at("axis").get<std::string>()), index});
          } else {
            p.steps.emplace_back(FixedStep{matrix_from_json(s.at("matrix"))});
          }
        }
        c.add(std::move(p));
      } else if (type == "fixed") {
        c.add(FixedGate{matrix_from_json(g.at("unitary")), g.at("support").get<std::vector<int>>()});
      } else {
        throw std::invalid_argument("circuit: unknown gate type '" + type + "'");
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("circuit: ") + e.what());
  }
}

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, trim(t.substr(eq + 1))).second) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": repeated key '" + key + "'");
    }
  }
  return out;
}

void write_header(std::ostream& out, const std::map<std::string, std::string>& config) {
  out << "# sungrad " << version() << '\n';
  for (const auto& [k, v] : config) out << "# " << k << '=' << v << '\n';
}

}  // namespace sungrad
