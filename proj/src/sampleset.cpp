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

#include "factorqubo/sampleset.hpp"

#include <algorithm>
#include <map>

#include "factorqubo/error.hpp"

namespace factorqubo {

Domain domain_of(const Program &program) {
    return std::holds_alternative<PseudoBooleanPolynomial>(program) ? Domain::Binary : Domain::Spin;
}

const Registry &variables_of(const Program &program) {
    return std::visit([](const auto &p) -> const Registry & { return p.variables(); }, program);
}

Rational energy(const Program &program, std::span<const std::int8_t> state) {
    if (const auto *qubo = std::get_if<PseudoBooleanPolynomial>(&program)) {
        if (state.size() < qubo->variables().size())
            throw Error(ErrorKind::IncompleteAssignment, "state does not cover every variable");
        std::vector<std::uint8_t> bits(state.size());
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (state[i] != 0 && state[i] != 1)
                throw Error(ErrorKind::WrongVariableDomain, "QUBO states must be 0/1");
            bits[i] = static_cast<std::uint8_t>(state[i]);
        }
        return Rational(qubo->evaluate(bits));
    }
    return std::get<IsingProgram>(program).energy(state);
}

std::vector<std::int8_t> bits_to_spins(std::span<const std::int8_t> bits) {
    std::vector<std::int8_t> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i] = static_cast<std::int8_t>(2 * bits[i] - 1);
    return out;
}

std::vector<std::int8_t> spins_to_bits(std::span<const std::int8_t> spins) {
    std::vector<std::int8_t> out(spins.size());
    for (std::size_t i = 0; i < spins.size(); ++i)
        out[i] = spins[i] > 0 ? 1 : 0;
    return out;
}

SampleSet SampleSet::aggregate(const Program &program, const std::vector<std::vector<std::int8_t>> &states,
                               SampleMetadata metadata) {
    SampleSet out(variables_of(program), domain_of(program));
    std::map<std::vector<std::int8_t>, std::uint64_t> counts;
    for (const auto &s : states)
        ++counts[s];
    for (const auto &[state, n] : counts)
        out.records_.push_back({state, energy(program, state), n});
    out.sort();
    out.metadata_ = std::move(metadata);
    return out;
}

void SampleSet::sort() {
    std::stable_sort(records_.begin(), records_.end(), [](const SampleRecord &a, const SampleRecord &b) {
        if (a.energy != b.energy)
            return a.energy < b.energy;
        return a.state < b.state;
    });
}

const SampleRecord &SampleSet::lowest() const {
    if (records_.empty())
        throw Error(ErrorKind::NoSolution, "sample set is empty");
    return records_.front();
}

std::uint64_t SampleSet::total_occurrences() const {
    std::uint64_t n = 0;
    for (const auto &r : records_)
        n += r.occurrences;
    return n;
}

bool SampleSet::same_samples(const SampleSet &other) const {
    const auto &a = metadata_;
    const auto &b = other.metadata_;
    return vars_ == other.vars_ && domain_ == other.domain_ && records_ == other.records_ && a.solver == b.solver &&
           a.seed == b.seed && a.reads == b.reads && a.anneal_time_us == b.anneal_time_us &&
           a.broken_chain_fraction == b.broken_chain_fraction && a.info == b.info;
}

}  // namespace factorqubo
