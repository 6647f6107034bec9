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
#include <utility>
#include <vector>

#include "factorqubo/model.hpp"
#include "factorqubo/pbf.hpp"

namespace factorqubo {

enum class Method { Direct, Column, Block };

const char *to_string(Method m);
Method parse_method(const std::string &text);

// A carry bit emitted by one equation (column or block) and consumed as a
// summand by the equation that owns column `target`.
struct CarryVariable {
    VarId id = 0;
    unsigned source = 0;  // column index (column method) or block index (block method)
    unsigned target = 0;  // absolute column the carry lands in
    Coeff weight = 0;     // weight inside the emitting equation, a power of two
};

struct BlockRange {
    unsigned lo = 0;  // first column, inclusive
    unsigned hi = 0;  // one past the last column
    unsigned carries = 0;

    unsigned width() const noexcept { return hi - lo; }
    friend bool operator==(const BlockRange &, const BlockRange &) = default;
};

// Contiguous partition of columns 1 .. L_N-1. Column 0 is consumed by fixing
// p_0 = q_0 = 1.
struct BlockPlan {
    unsigned n_length = 0;
    std::vector<BlockRange> blocks;

    unsigned total_carries() const;
    std::vector<unsigned> widths() const;
    friend bool operator==(const BlockPlan &, const BlockPlan &) = default;
};

// Result of a table builder: the objective, its carries, and the residual of
// every equation (objective == sum of squared residuals).
struct TableObjective {
    PseudoBooleanPolynomial objective;
    std::vector<CarryVariable> carries;
    std::vector<PseudoBooleanPolynomial> residuals;
};

// Registry holding the free factor bits p1..p_{Lp-2}, q1..q_{Lq-2} in that order.
Registry factor_registry(const FactorizationInstance &instance);

// (N - p*q)^2 over the free factor bits.
PseudoBooleanPolynomial build_direct(const FactorizationInstance &instance);

// One equation per column 1 .. L_N-1 with carries c{i}_{j} (column i to column j).
TableObjective build_column_table(const FactorizationInstance &instance);

Coeff default_block_bound(const FactorizationInstance &instance);

// Greedy left-to-right partition: a block keeps growing while
// (2^(width + carries))^2 <= max_coeff_bound.
BlockPlan plan_blocks(const FactorizationInstance &instance, Coeff max_coeff_bound);
BlockPlan plan_blocks(const FactorizationInstance &instance);

// Plan with caller-chosen widths (e.g. {2, 2, 3} for L_N = 8). Carry counts
// follow the same worst-case rule as plan_blocks.
BlockPlan plan_from_widths(const FactorizationInstance &instance, std::span<const unsigned> widths);

// One equation per block with sequential carries c1, c2, ... Throws
// PlanMismatch when the plan does not cover columns 1 .. L_N-1.
TableObjective build_block_table(const FactorizationInstance &instance, const BlockPlan &plan);

// Objective for the chosen method before quadratization.
PseudoBooleanPolynomial build_objective(const FactorizationInstance &instance, Method method,
                                        std::optional<Coeff> block_bound = std::nullopt);

struct Factors {
    BigInt p;
    BigInt q;
    friend bool operator==(const Factors &, const Factors &) = default;
};

// Reads p_j / q_k by name from an assignment over `vars`; carries and
// ancillas are ignored.
Factors decode_solution(const Registry &vars, std::span<const std::uint8_t> bits,
                        const FactorizationInstance &instance);
Factors decode_solution(const std::map<std::string, int> &assignment, const FactorizationInstance &instance);

}  // namespace factorqubo
