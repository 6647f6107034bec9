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

#include "factorqubo/builders.hpp"

#include <algorithm>

#include "factorqubo/error.hpp"

namespace factorqubo {

const char *to_string(Method m) {
    switch (m) {
    case Method::Direct: return "direct";
    case Method::Column: return "column";
    case Method::Block: return "block";
    }
    return "block";
}

Method parse_method(const std::string &text) {
    if (text == "direct")
        return Method::Direct;
    if (text == "column")
        return Method::Column;
    if (text == "block")
        return Method::Block;
    throw Error(ErrorKind::InvalidInput, "unknown method '" + text + "' (expected direct, column or block)");
}

unsigned BlockPlan::total_carries() const {
    unsigned total = 0;
    for (const auto &b : blocks)
        total += b.carries;
    return total;
}

std::vector<unsigned> BlockPlan::widths() const {
    std::vector<unsigned> w;
    for (const auto &b : blocks)
        w.push_back(b.width());
    return w;
}

Registry factor_registry(const FactorizationInstance &instance) {
    Registry vars;
    auto p = instance.p_bits();
    for (unsigned j = 1; j + 1 < p.length(); ++j)
        vars.add(p.variable_name(j), VarKind::PBit);
    auto q = instance.q_bits();
    for (unsigned k = 1; k + 1 < q.length(); ++k)
        vars.add(q.variable_name(k), VarKind::QBit);
    return vars;
}

namespace {

using Poly = PseudoBooleanPolynomial;

// Bit `position` of a factor as a polynomial: constant 1 for fixed bits.
Poly factor_bit(const Registry &vars, const FactorBitVector &f, unsigned position) {
    if (f.is_fixed(position))
        return Poly::constant(vars, 1);
    return Poly::variable(vars, vars.at(f.variable_name(position)));
}

// Partial products p_j * q_k landing in column c.
std::vector<Poly> column_products(const Registry &vars, const FactorizationInstance &inst, unsigned c) {
    std::vector<Poly> out;
    auto p = inst.p_bits();
    auto q = inst.q_bits();
    for (unsigned j = 0; j < p.length() && j <= c; ++j) {
        unsigned k = c - j;
        if (k < q.length())
            out.push_back(factor_bit(vars, p, j) * factor_bit(vars, q, k));
    }
    return out;
}

unsigned column_product_count(const FactorizationInstance &inst, unsigned c) {
    unsigned count = 0;
    for (unsigned j = 0; j < inst.p_length() && j <= c; ++j)
        if (c - j < inst.q_length())
            ++count;
    return count;
}

unsigned digits(std::uint64_t x) {
    unsigned d = 0;
    for (; x; x >>= 1)
        ++d;
    return d;
}

// Worst-case carry count of block [lo, hi): all partial products and incoming
// carries set to one. Carries that would land at or beyond column L_N are
// omitted, since p*q = N leaves nothing there.
unsigned block_carry_count(const FactorizationInstance &inst, const std::vector<unsigned> &incoming, unsigned lo,
                           unsigned hi) {
    std::uint64_t smax = 0;
    for (unsigned c = lo; c < hi; ++c)
        smax += static_cast<std::uint64_t>(column_product_count(inst, c) + incoming[c]) << (c - lo);
    unsigned raw = digits(smax >> (hi - lo));
    unsigned room = inst.length() > hi ? inst.length() - hi : 0;
    return std::min(raw, room);
}

void add_incoming(std::vector<unsigned> &incoming, unsigned hi, unsigned carries) {
    for (unsigned t = 0; t < carries; ++t)
        ++incoming[hi + t];
}

void check_columns(const FactorizationInstance &inst) {
    if (inst.length() < 2)
        throw Error(ErrorKind::InstanceTooSmall, "instance has no columns to encode");
}

enum class CarryNaming { Column, Sequential };

TableObjective build_table(const FactorizationInstance &inst, const BlockPlan &plan, CarryNaming naming) {
    Registry vars = factor_registry(inst);
    std::vector<CarryVariable> carries;
    std::vector<std::vector<VarId>> incoming(inst.length());
    std::vector<std::vector<VarId>> outgoing(plan.blocks.size());
    for (unsigned b = 0; b < plan.blocks.size(); ++b) {
        const auto &blk = plan.blocks[b];
        for (unsigned t = 0; t < blk.carries; ++t) {
            unsigned target = blk.hi + t;
            std::string name = naming == CarryNaming::Column
                                   ? "c" + std::to_string(blk.lo) + "_" + std::to_string(target)
                                   : "c" + std::to_string(carries.size() + 1);
            VarId id = vars.add(name, VarKind::Carry);
            Coeff weight = Coeff{1} << (blk.width() + t);
            carries.push_back({id, naming == CarryNaming::Column ? blk.lo : b, target, weight});
            incoming[target].push_back(id);
            outgoing[b].push_back(id);
        }
    }

    TableObjective out{Poly(vars), std::move(carries), {}};
    for (unsigned b = 0; b < plan.blocks.size(); ++b) {
        const auto &blk = plan.blocks[b];
        Poly residual(vars);
        for (unsigned c = blk.lo; c < blk.hi; ++c) {
            Coeff w = Coeff{1} << (c - blk.lo);
            for (auto &prod : column_products(vars, inst, c))
                residual += prod * w;
            for (VarId id : incoming[c])
                residual.add_term({id}, w);
            residual.add_term({}, -w * inst.n_bit(c));
        }
        for (unsigned t = 0; t < outgoing[b].size(); ++t)
            residual.add_term({outgoing[b][t]}, -(Coeff{1} << (blk.width() + t)));
        out.objective += square(residual);
        out.residuals.push_back(std::move(residual));
    }
    return out;
}

void check_plan(const FactorizationInstance &inst, const BlockPlan &plan) {
    if (plan.n_length != inst.length())
        throw Error(ErrorKind::PlanMismatch, "plan built for L_N = " + std::to_string(plan.n_length) +
                                                 ", instance has L_N = " + std::to_string(inst.length()));
    unsigned next = 1;
    for (const auto &b : plan.blocks) {
        if (b.lo != next || b.hi <= b.lo)
            throw Error(ErrorKind::PlanMismatch, "blocks must be contiguous, non-empty and start at column 1");
        if (b.hi + b.carries > inst.length())
            throw Error(ErrorKind::PlanMismatch, "block carries land beyond column L_N - 1");
        next = b.hi;
    }
    if (next != inst.length())
        throw Error(ErrorKind::PlanMismatch, "plan covers columns up to " + std::to_string(next - 1) +
                                                 " instead of " + std::to_string(inst.length() - 1));
}

std::int64_t n_as_coeff(const BigInt &n) {
    if (n > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
        throw Error(ErrorKind::Overflow, "N = " + to_string(n) + " is too large for 64-bit coefficients");
    return static_cast<std::int64_t>(n);
}

}  // namespace

PseudoBooleanPolynomial build_direct(const FactorizationInstance &instance) {
    Registry vars = factor_registry(instance);
    Poly p(vars), q(vars);
    auto pb = instance.p_bits();
    auto qb = instance.q_bits();
    if (pb.length() > 62 || qb.length() > 62)
        throw Error(ErrorKind::Overflow, "factor too long for 64-bit coefficients");
    for (unsigned j = 0; j < pb.length(); ++j)
        p += factor_bit(vars, pb, j) * (Coeff{1} << j);
    for (unsigned k = 0; k < qb.length(); ++k)
        q += factor_bit(vars, qb, k) * (Coeff{1} << k);
    Poly residual = Poly::constant(vars, n_as_coeff(instance.n())) - p * q;
    return square(residual);
}

TableObjective build_column_table(const FactorizationInstance &instance) {
    check_columns(instance);
    std::vector<unsigned> widths(instance.length() - 1, 1);
    return build_table(instance, plan_from_widths(instance, widths), CarryNaming::Column);
}

Coeff default_block_bound(const FactorizationInstance &instance) {
    Coeff l = instance.length();
    return l * l * l;
}

BlockPlan plan_blocks(const FactorizationInstance &instance) {
    return plan_blocks(instance, default_block_bound(instance));
}

BlockPlan plan_blocks(const FactorizationInstance &instance, Coeff max_coeff_bound) {
    check_columns(instance);
    if (max_coeff_bound < 4)
        throw Error(ErrorKind::InvalidInput, "block coefficient bound must be at least 4");
    const unsigned last = instance.length();  // one past the last column
    std::vector<unsigned> incoming(last + 64, 0);
    auto fits = [&](unsigned width, unsigned carries) {
        unsigned e = width + carries;
        if (e >= 31)
            return false;
        std::uint64_t c = std::uint64_t{1} << e;
        return c * c <= static_cast<std::uint64_t>(max_coeff_bound);
    };

    BlockPlan plan{instance.length(), {}};
    unsigned lo = 1;
    while (lo < last) {
        unsigned hi = lo + 1;
        unsigned carries = block_carry_count(instance, incoming, lo, hi);
        while (hi < last) {
            unsigned wider = block_carry_count(instance, incoming, lo, hi + 1);
            if (!fits(hi + 1 - lo, wider))
                break;
            ++hi;
            carries = wider;
        }
        plan.blocks.push_back({lo, hi, carries});
        add_incoming(incoming, hi, carries);
        lo = hi;
    }
    return plan;
}

BlockPlan plan_from_widths(const FactorizationInstance &instance, std::span<const unsigned> widths) {
    check_columns(instance);
    std::vector<unsigned> incoming(instance.length() + 64, 0);
    BlockPlan plan{instance.length(), {}};
    unsigned lo = 1;
    for (unsigned w : widths) {
        if (w == 0)
            throw Error(ErrorKind::PlanMismatch, "block width must be positive");
        unsigned hi = lo + w;
        if (hi > instance.length())
            throw Error(ErrorKind::PlanMismatch, "block widths exceed columns 1 .. L_N-1");
        unsigned carries = block_carry_count(instance, incoming, lo, hi);
        plan.blocks.push_back({lo, hi, carries});
        add_incoming(incoming, hi, carries);
        lo = hi;
    }
    if (lo != instance.length())
        throw Error(ErrorKind::PlanMismatch, "block widths do not cover columns 1 .. L_N-1");
    return plan;
}

TableObjective build_block_table(const FactorizationInstance &instance, const BlockPlan &plan) {
    check_plan(instance, plan);
    return build_table(instance, plan, CarryNaming::Sequential);
}

PseudoBooleanPolynomial build_objective(const FactorizationInstance &instance, Method method,
                                        std::optional<Coeff> block_bound) {
    switch (method) {
    case Method::Direct: return build_direct(instance);
    case Method::Column: return build_column_table(instance).objective;
    case Method::Block:
        return build_block_table(instance, plan_blocks(instance, block_bound.value_or(default_block_bound(instance))))
            .objective;
    }
    throw Error(ErrorKind::InvalidInput, "unknown method");
}

namespace {

BigInt read_factor(const FactorBitVector &f, const auto &lookup) {
    std::vector<std::uint8_t> free(f.free_count());
    for (unsigned j = 1; j + 1 < f.length(); ++j)
        free[j - 1] = lookup(f.variable_name(j));
    return f.reconstruct(free);
}

}  // namespace

Factors decode_solution(const Registry &vars, std::span<const std::uint8_t> bits,
                        const FactorizationInstance &instance) {
    auto lookup = [&](const std::string &name) -> std::uint8_t {
        auto id = vars.find(name);
        if (!id || *id >= bits.size())
            throw Error(ErrorKind::IncompleteAssignment, "assignment has no factor bit '" + name + "'");
        return bits[*id];
    };
    return {read_factor(instance.p_bits(), lookup), read_factor(instance.q_bits(), lookup)};
}

Factors decode_solution(const std::map<std::string, int> &assignment, const FactorizationInstance &instance) {
    auto lookup = [&](const std::string &name) -> std::uint8_t {
        auto it = assignment.find(name);
        if (it == assignment.end())
            throw Error(ErrorKind::IncompleteAssignment, "assignment has no factor bit '" + name + "'");
        return static_cast<std::uint8_t>(it->second);
    };
    return {read_factor(instance.p_bits(), lookup), read_factor(instance.q_bits(), lookup)};
}

}  // namespace factorqubo
