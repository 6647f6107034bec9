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
#include <functional>
#include <vector>

#include "factorqubo/sampleset.hpp"

namespace factorqubo::detail {

// Integer-scaled Ising form of a program: energy(s) = (sum h s + sum J s s +
// offset) / denominator, with couplings stored as adjacency lists.
struct SpinModel {
    std::size_t n = 0;
    std::int64_t denominator = 1;
    std::vector<std::int64_t> h;
    std::int64_t offset = 0;
    std::vector<std::size_t> row;  // CSR offsets, size n + 1
    std::vector<std::uint32_t> col;
    std::vector<std::int64_t> weight;

    static SpinModel compile(const Program &program);
    static SpinModel compile(const IsingProgram &ising);

    // h_i + sum_j J_ij s_j for every i.
    std::vector<std::int64_t> local_fields(const std::vector<std::int8_t> &spins) const;
    std::int64_t scaled_energy(const std::vector<std::int8_t> &spins) const;
};

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)> &body);

// Converts a spin-domain state to the program's own domain.
std::vector<std::int8_t> to_program_domain(Domain domain, const std::vector<std::int8_t> &spins);

}  // namespace factorqubo::detail
