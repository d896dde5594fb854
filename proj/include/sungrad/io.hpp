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
#include <map>
#include <string>

#include <json.hpp>

#include "sungrad/gate.hpp"
#include "sungrad/sim.hpp"

namespace sungrad {

using Json = nlohmann::ordered_json;

const char* version();

/// Row-major list of rows, each entry a [re, im] pair.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"support": [...], "basis": ["XI", ...], "theta": [...]}
Json gate_to_json(const SUNGate& g);
SUNGate gate_from_json(const Json& j);

/// {"n_qubits": n, "gates": [...]}. SU(N) gates use the gate layout plus
/// "type": "sun"; product and fixed gates carry "type": "product" / "fixed".
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// key=value lines; blank lines and lines starting with '#' are skipped.
/// Throws std::invalid_argument on malformed or repeated keys.
std::map<std::string, std::string> parse_key_value(std::istream& in);

/// "# sungrad <version>" followed by one "# key=value" line per entry.
void write_header(std::ostream& out, const std::map<std::string, std::string>& config);

}  // namespace sungrad
