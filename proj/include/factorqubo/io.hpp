// Copyright 2026 The factorqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "factorqubo/builders.hpp"
#include "factorqubo/embed.hpp"
#include "factorqubo/ising.hpp"
#include "factorqubo/model.hpp"
#include "factorqubo/pbf.hpp"
#include "factorqubo/sampleset.hpp"
#include "factorqubo/solvers.hpp"

namespace factorqubo {

using nlohmann::json;

// {"N": "<decimal>", "L_N": int, "L_p": int, "L_q": int}
json instance_to_json(const FactorizationInstance &instance);
FactorizationInstance instance_from_json(const json &j);

// {"variables": [names], "terms": [{"vars": [names], "coeff": int}]}, plus an
// optional "instance" object so that downstream tools can decode factors.
json polynomial_to_json(const PseudoBooleanPolynomial &poly,
                        const std::optional<FactorizationInstance> &instance = std::nullopt);

struct LoadedPolynomial {
    PseudoBooleanPolynomial poly;
    std::optional<FactorizationInstance> instance;
};
LoadedPolynomial polynomial_from_json(const json &j);

// Line format: "h <var> <value>", "J <var> <var> <value>", "offset <value>".
// Values are exact rationals ("3", "-1/4"); '#' starts a comment.
std::string ising_to_text(const IsingProgram &ising);
IsingProgram ising_from_text(const std::string &text);

// Records carry the state, exact energy and occurrence count; when an
// instance is given each record also carries the decoded (p, q).
json sampleset_to_json(const SampleSet &samples, const std::optional<FactorizationInstance> &instance = std::nullopt);

// {"chains": {"var": [node ids]}, "stats": {...}, "chimera": "MxNxT", "j_chain": "-2"}
json embedding_to_json(const Embedding &emb, const Registry &vars, const ChimeraShape &shape,
                       const std::optional<EmbeddedIsing> &embedded = std::nullopt);
Embedding embedding_from_json(const json &j, const Registry &vars);

// {"s": [...], "A": [...], "B": [...], "anneal_time_us": 1}
Schedule schedule_from_json(const json &j);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

}  // namespace factorqubo
