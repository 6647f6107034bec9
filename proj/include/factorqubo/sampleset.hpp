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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "factorqubo/ising.hpp"
#include "factorqubo/pbf.hpp"

namespace factorqubo {

enum class Domain { Binary, Spin };

// A QUBO (degree <= 2 polynomial over bits) or an Ising program over spins.
using Program = std::variant<PseudoBooleanPolynomial, IsingProgram>;

Domain domain_of(const Program &program);
const Registry &variables_of(const Program &program);

// Exact objective value. Bits must be 0/1 for a QUBO, spins +-1 for Ising.
Rational energy(const Program &program, std::span<const std::int8_t> state);

struct SampleRecord {
    std::vector<std::int8_t> state;
    Rational energy{0};
    std::uint64_t occurrences = 0;

    friend bool operator==(const SampleRecord &, const SampleRecord &) = default;
};

struct SampleMetadata {
    std::string solver;
    std::uint64_t seed = 0;
    std::uint64_t reads = 0;
    double anneal_time_us = 0.0;    // nominal per-read anneal duration
    double sampling_time_us = 0.0;  // measured wall clock for all reads
    std::optional<double> broken_chain_fraction;
    std::map<std::string, std::string> info;
};

class SampleSet {
  public:
    SampleSet() = default;
    SampleSet(Registry vars, Domain domain) : vars_(std::move(vars)), domain_(domain) {}

    // Groups identical states, scores each exactly against `program`, sorts
    // by (energy, state).
    static SampleSet aggregate(const Program &program, const std::vector<std::vector<std::int8_t>> &states,
                               SampleMetadata metadata);

    const Registry &variables() const noexcept { return vars_; }
    Domain domain() const noexcept { return domain_; }
    const std::vector<SampleRecord> &records() const noexcept { return records_; }
    const SampleMetadata &metadata() const noexcept { return metadata_; }
    SampleMetadata &metadata() noexcept { return metadata_; }

    bool empty() const noexcept { return records_.empty(); }
    std::size_t size() const noexcept { return records_.size(); }
    const SampleRecord &lowest() const;
    std::uint64_t total_occurrences() const;

    void push_back(SampleRecord record) { records_.push_back(std::move(record)); }
    void sort();

    // Records and every non-timing metadata field agree.
    bool same_samples(const SampleSet &other) const;

  private:
    Registry vars_;
    Domain domain_ = Domain::Binary;
    std::vector<SampleRecord> records_;
    SampleMetadata metadata_;
};

// Bits <-> spins via s = 2x - 1.
std::vector<std::int8_t> bits_to_spins(std::span<const std::int8_t> bits);
std::vector<std::int8_t> spins_to_bits(std::span<const std::int8_t> spins);

}  // namespace factorqubo
