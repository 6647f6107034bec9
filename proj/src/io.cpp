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

#include "factorqubo/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "factorqubo/error.hpp"

namespace factorqubo {

json instance_to_json(const FactorizationInstance &instance) {
    return {{"N", to_string(instance.n())},
            {"L_N", instance.length()},
            {"L_p", instance.p_length()},
            {"L_q", instance.q_length()}};
}

FactorizationInstance instance_from_json(const json &j) {
    try {
        BigInt n = j.at("N").is_string() ? parse_bigint(j.at("N").get<std::string>())
                                         : BigInt(j.at("N").get<std::uint64_t>());
        std::optional<FactorLengths> lengths;
        if (j.contains("L_p") || j.contains("L_q"))
            lengths = FactorLengths{j.at("L_p").get<unsigned>(), j.at("L_q").get<unsigned>()};
        auto inst = make_instance(n, lengths);
        if (j.contains("L_N") && j.at("L_N").get<unsigned>() != inst.length())
            throw Error(ErrorKind::InconsistentLengths, "L_N does not match N");
        return inst;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("instance JSON: ") + e.what());
    }
}

json polynomial_to_json(const PseudoBooleanPolynomial &poly, const std::optional<FactorizationInstance> &instance) {
    json vars = json::array();
    for (const auto &v : poly.variables())
        vars.push_back(v.name);
    json terms = json::array();
    for (const auto &[m, c] : poly.terms()) {
        json names = json::array();
        for (VarId v : m.vars())
            names.push_back(poly.variables().name(v));
        terms.push_back({{"vars", names}, {"coeff", c}});
    }
    json out = {{"variables", vars}, {"terms", terms}};
    if (instance)
        out["instance"] = instance_to_json(*instance);
    return out;
}

namespace {

VarKind infer_kind(const std::string &name) {
    static const std::regex p_bit("p[0-9]+"), q_bit("q[0-9]+"), carry("c[0-9]+(_[0-9]+)?"), ancilla("a[0-9]+");
    if (std::regex_match(name, p_bit))
        return VarKind::PBit;
    if (std::regex_match(name, q_bit))
        return VarKind::QBit;
    if (std::regex_match(name, carry))
        return VarKind::Carry;
    if (std::regex_match(name, ancilla))
        return VarKind::Ancilla;
    return VarKind::Generic;
}

}  // namespace

LoadedPolynomial polynomial_from_json(const json &j) {
    try {
        Registry vars;
        for (const auto &name : j.at("variables"))
            vars.add(name.get<std::string>(), infer_kind(name.get<std::string>()));
        PseudoBooleanPolynomial poly(vars);
        for (const auto &t : j.at("terms")) {
            std::vector<VarId> ids;
            for (const auto &name : t.at("vars"))
                ids.push_back(vars.at(name.get<std::string>()));
            poly.add_term(Monomial(std::move(ids)), t.at("coeff").get<Coeff>());
        }
        LoadedPolynomial out{std::move(poly), std::nullopt};
        if (j.contains("instance"))
            out.instance = instance_from_json(j.at("instance"));
        return out;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("polynomial JSON: ") + e.what());
    }
}

std::string ising_to_text(const IsingProgram &ising) {
    std::ostringstream os;
    const auto &vars = ising.variables();
    for (VarId v = 0; v < ising.size(); ++v)
        os << "h " << vars.name(v) << ' ' << to_string(ising.field(v)) << '\n';
    for (const auto &[pair, j] : ising.couplings())
        os << "J " << vars.name(pair.first) << ' ' << vars.name(pair.second) << ' ' << to_string(j) << '\n';
    os << "offset " << to_string(ising.offset()) << '\n';
    return os.str();
}

IsingProgram ising_from_text(const std::string &text) {
    struct Line {
        std::vector<std::string> words;
        std::size_t number;
    };
    std::vector<Line> lines;
    Registry vars;
    auto declare = [&](const std::string &name) {
        if (!vars.find(name))
            vars.add(name, infer_kind(name));
    };
    std::istringstream is(text);
    std::string raw;
    for (std::size_t number = 1; std::getline(is, raw); ++number) {
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        Line line{{}, number};
        for (std::string w; ls >> w;)
            line.words.push_back(w);
        if (line.words.empty())
            continue;
        const auto &tag = line.words[0];
        auto bad = [&] { return Error(ErrorKind::Parse, "Ising text line " + std::to_string(number) + ": '" + raw + "'"); };
        if (tag == "h") {
            if (line.words.size() != 3)
                throw bad();
            declare(line.words[1]);
        } else if (tag == "J") {
            if (line.words.size() != 4)
                throw bad();
            declare(line.words[1]);
            declare(line.words[2]);
        } else if (tag == "offset") {
            if (line.words.size() != 2)
                throw bad();
        } else {
            throw bad();
        }
        lines.push_back(std::move(line));
    }
    IsingProgram out(vars);
    for (const auto &line : lines) {
        const auto &w = line.words;
        if (w[0] == "h")
            out.add_field(vars.at(w[1]), parse_rational(w[2]));
        else if (w[0] == "J")
            out.add_coupling(vars.at(w[1]), vars.at(w[2]), parse_rational(w[3]));
        else
            out.add_offset(parse_rational(w[1]));
    }
    return out;
}

json sampleset_to_json(const SampleSet &samples, const std::optional<FactorizationInstance> &instance) {
    json vars = json::array();
    for (const auto &v : samples.variables())
        vars.push_back(v.name);
    std::vector<std::uint8_t> bits;
    json records = json::array();
    for (const auto &r : samples.records()) {
        json rec = {{"sample", r.state}, {"energy", to_string(r.energy)}, {"num_occurrences", r.occurrences}};
        if (instance) {
            bits.assign(r.state.size(), 0);
            for (std::size_t i = 0; i < r.state.size(); ++i)
                bits[i] = r.state[i] > 0 ? 1 : 0;
            auto f = decode_solution(samples.variables(), bits, *instance);
            rec["p"] = to_string(f.p);
            rec["q"] = to_string(f.q);
            rec["verified"] = verify_factorization(*instance, f.p, f.q);
        }
        records.push_back(std::move(rec));
    }
    const auto &m = samples.metadata();
    json meta = {{"solver", m.solver},
                 {"seed", m.seed},
                 {"reads", m.reads},
                 {"anneal_time_us", m.anneal_time_us},
                 {"sampling_time_us", m.sampling_time_us},
                 {"domain", samples.domain() == Domain::Binary ? "binary" : "spin"}};
    if (m.broken_chain_fraction)
        meta["broken_chain_fraction"] = *m.broken_chain_fraction;
    for (const auto &[k, v] : m.info)
        meta[k] = v;
    json out = {{"variables", vars}, {"records", records}, {"metadata", meta}};
    if (instance)
        out["instance"] = instance_to_json(*instance);
    return out;
}

json embedding_to_json(const Embedding &emb, const Registry &vars, const ChimeraShape &shape,
                       const std::optional<EmbeddedIsing> &embedded) {
    json chains = json::object();
    for (std::size_t v = 0; v < emb.chains.size(); ++v)
        chains[vars.name(static_cast<VarId>(v))] = emb.chains[v];
    json stats = {{"logical_variables", emb.chains.size()},
                  {"physical_qubits", emb.physical_qubit_count()},
                  {"max_chain_length", emb.max_chain_length()}};
    json out = {{"chains", chains}, {"chimera", to_string(shape)}};
    if (embedded) {
        stats["physical_couplers"] = embedded->physical.couplings().size();
        stats["chain_couplers"] = embedded->chain_coupler_count;
        stats["scale"] = to_string(embedded->scale);
        out["j_chain"] = to_string(embedded->j_chain);
    }
    out["stats"] = stats;
    return out;
}

Embedding embedding_from_json(const json &j, const Registry &vars) {
    try {
        Embedding emb;
        emb.chains.resize(vars.size());
        for (const auto &[name, nodes] : j.at("chains").items()) {
            auto chain = nodes.get<Chain>();
            std::sort(chain.begin(), chain.end());
            emb.chains.at(vars.at(name)) = std::move(chain);
        }
        return emb;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("embedding JSON: ") + e.what());
    }
}

Schedule schedule_from_json(const json &j) {
    try {
        Schedule s;
        s.s = j.at("s").get<std::vector<double>>();
        s.a = j.at("A").get<std::vector<double>>();
        s.b = j.at("B").get<std::vector<double>>();
        s.anneal_time_us = j.value("anneal_time_us", 1.0);
        s.validate();
        return s;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("schedule JSON: ") + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << contents;
}

}  // namespace factorqubo
