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

#include <algorithm>
#include <map>

#include "factorqubo/embed.hpp"
#include "factorqubo/error.hpp"

namespace factorqubo {

EmbeddedIsing embed_ising(const IsingProgram &logical, const Embedding &emb, const HardwareGraph &hw,
                          const Rational &j_chain) {
    const Graph &target = hw.graph();
    auto problems = embedding_problems(interaction_graph(logical), target, emb);
    if (!problems.empty())
        throw Error(ErrorKind::EmbeddingMismatch, problems.front());
    if (j_chain >= 0)
        throw Error(ErrorKind::InvalidInput, "chain coupling must be negative (ferromagnetic)");

    EmbeddedIsing out;
    out.embedding = emb;
    out.j_chain = j_chain;
    for (const auto &chain : emb.chains)
        out.physical_nodes.insert(out.physical_nodes.end(), chain.begin(), chain.end());
    std::sort(out.physical_nodes.begin(), out.physical_nodes.end());

    Registry vars;
    std::map<NodeId, VarId> index;
    for (NodeId q : out.physical_nodes)
        index.emplace(q, vars.add("q" + std::to_string(q), VarKind::Physical));

    std::vector<Rational> h(vars.size());
    std::map<SpinPair, Rational> couplings;
    for (VarId v = 0; v < logical.size(); ++v) {
        const auto &chain = emb.chains[v];
        Rational share = logical.field(v) / static_cast<std::int64_t>(chain.size());
        for (NodeId q : chain)
            h[index.at(q)] += share;
    }
    for (const auto &[pair, j] : logical.couplings()) {
        // Chains are sorted, so the first hit is the smallest (a, b).
        std::optional<std::pair<NodeId, NodeId>> coupler;
        for (NodeId a : emb.chains[pair.first]) {
            for (NodeId b : emb.chains[pair.second])
                if (target.has_edge(a, b)) {
                    coupler = std::make_pair(a, b);
                    break;
                }
            if (coupler)
                break;
        }
        VarId ia = index.at(coupler->first);
        VarId ib = index.at(coupler->second);
        couplings[{std::min(ia, ib), std::max(ia, ib)}] += j;
    }

    Rational largest{0};
    for (const auto &x : h)
        largest = std::max(largest, abs(x));
    for (const auto &[pair, j] : couplings)
        largest = std::max(largest, abs(j));
    out.scale = largest > 1 ? Rational(1) / largest : Rational(1);

    IsingProgram physical(vars);
    for (VarId i = 0; i < vars.size(); ++i)
        physical.add_field(i, h[i] * out.scale);
    for (const auto &[pair, j] : couplings)
        physical.add_coupling(pair.first, pair.second, j * out.scale);
    physical.add_offset(logical.offset() * out.scale);
    for (const auto &chain : emb.chains)
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t k = i + 1; k < chain.size(); ++k)
                if (target.has_edge(chain[i], chain[k])) {
                    physical.add_coupling(index.at(chain[i]), index.at(chain[k]), j_chain);
                    ++out.chain_coupler_count;
                }
    out.physical = std::move(physical);
    return out;
}

std::vector<std::int8_t> spread_to_chains(const EmbeddedIsing &embedded, std::span<const std::int8_t> logical_spins) {
    std::vector<std::int8_t> out(embedded.physical_nodes.size(), 1);
    const auto &nodes = embedded.physical_nodes;
    for (std::size_t v = 0; v < embedded.embedding.chains.size(); ++v)
        for (NodeId q : embedded.embedding.chains[v]) {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), q);
            out[static_cast<std::size_t>(it - nodes.begin())] = logical_spins[v];
        }
    return out;
}

SampleSet unembed(const SampleSet &physical_samples, const EmbeddedIsing &embedded, const Program &logical) {
    const auto &chains = embedded.embedding.chains;
    const auto &pvars = physical_samples.variables();
    // Chain member -> column of the physical sample.
    std::vector<std::vector<std::size_t>> columns(chains.size());
    for (std::size_t v = 0; v < chains.size(); ++v)
        for (NodeId q : chains[v]) {
            auto id = pvars.find("q" + std::to_string(q));
            if (!id)
                throw Error(ErrorKind::IncompleteAssignment, "samples do not cover chain node " + std::to_string(q));
            columns[v].push_back(*id);
        }

    const Domain out_domain = domain_of(logical);
    const bool binary_in = physical_samples.domain() == Domain::Binary;
    std::map<std::vector<std::int8_t>, std::uint64_t> counts;
    std::uint64_t broken = 0;
    std::uint64_t total = 0;
    for (const auto &rec : physical_samples.records()) {
        std::vector<std::int8_t> state(chains.size());
        for (std::size_t v = 0; v < chains.size(); ++v) {
            int sum = 0;
            for (std::size_t col : columns[v]) {
                int s = rec.state[col];
                sum += binary_in ? 2 * s - 1 : s;
            }
            if (static_cast<std::size_t>(std::abs(sum)) != columns[v].size())
                broken += rec.occurrences;
            std::int8_t spin = sum >= 0 ? 1 : -1;
            state[v] = out_domain == Domain::Binary ? (spin > 0 ? 1 : 0) : spin;
        }
        total += rec.occurrences * chains.size();
        counts[state] += rec.occurrences;
    }

    SampleSet out(variables_of(logical), out_domain);
    for (const auto &[state, n] : counts)
        out.push_back({state, energy(logical, state), n});
    out.sort();
    out.metadata() = physical_samples.metadata();
    out.metadata().broken_chain_fraction = total ? static_cast<double>(broken) / static_cast<double>(total) : 0.0;
    return out;
}

}  // namespace factorqubo
