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

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "factorqubo/bench.hpp"
#include "factorqubo/builders.hpp"
#include "factorqubo/error.hpp"

using namespace factorqubo;

namespace {

// Assignment over `vars` with factor bits taken from p and q and every other
// variable set from `others` by name (missing names are 0).
std::vector<std::uint8_t> assignment(const Registry &vars, std::uint64_t p, std::uint64_t q,
                                     const std::map<std::string, int> &others = {}) {
    std::vector<std::uint8_t> bits(vars.size(), 0);
    for (VarId v = 0; v < vars.size(); ++v) {
        const std::string &name = vars.name(v);
        if (vars.kind(v) == VarKind::PBit)
            bits[v] = (p >> std::stoul(name.substr(1))) & 1u;
        else if (vars.kind(v) == VarKind::QBit)
            bits[v] = (q >> std::stoul(name.substr(1))) & 1u;
        else if (auto it = others.find(name); it != others.end())
            bits[v] = static_cast<std::uint8_t>(it->second);
    }
    return bits;
}

// Carry values under the rule "block [lo, hi) sends bit t of its overflow to
// column hi + t", computed from the actual product.
std::map<unsigned, std::vector<std::int64_t>> block_overflow(std::uint64_t p, std::uint64_t q, std::uint64_t n,
                                                             const std::vector<std::pair<unsigned, unsigned>> &blocks) {
    const unsigned columns = oracle::bits_of(n) + 8;
    auto lm = oracle::long_multiply(p, q, columns);
    std::vector<std::int64_t> landing(columns + 64, 0);
    std::map<unsigned, std::vector<std::int64_t>> out;
    for (auto [lo, hi] : blocks) {
        std::int64_t total = 0, target = 0;
        for (unsigned c = lo; c < hi; ++c) {
            total += (std::int64_t{lm.column_sum[c]} + landing[c]) << (c - lo);
            target += static_cast<std::int64_t>((n >> c) & 1u) << (c - lo);
        }
        std::int64_t diff = total - target;
        REQUIRE(diff >= 0);
        REQUIRE(diff % (std::int64_t{1} << (hi - lo)) == 0);
        std::int64_t overflow = diff >> (hi - lo);
        std::vector<std::int64_t> bits;
        for (unsigned t = 0; overflow >> t; ++t) {
            bits.push_back((overflow >> t) & 1);
            landing[hi + t] += (overflow >> t) & 1;
        }
        out[lo] = bits;
    }
    return out;
}

std::map<std::string, int> carry_values(const Registry &vars, const TableObjective &table, std::uint64_t p,
                                        std::uint64_t q, std::uint64_t n, const BlockPlan &plan) {
    std::vector<std::pair<unsigned, unsigned>> ranges;
    for (const auto &b : plan.blocks)
        ranges.emplace_back(b.lo, b.hi);
    auto overflow = block_overflow(p, q, n, ranges);
    std::map<std::string, int> values;
    for (const auto &c : table.carries) {
        // Find the emitting block: the one whose hi <= target with matching weight.
        for (const auto &b : plan.blocks) {
            const unsigned t = c.target - b.hi;
            if (c.target >= b.hi && c.weight == (Coeff{1} << (b.width() + t)) &&
                (c.source == b.lo || c.source == static_cast<unsigned>(&b - plan.blocks.data()))) {
                const auto &bits = overflow[b.lo];
                values[vars.name(c.id)] = t < bits.size() ? static_cast<int>(bits[t]) : 0;
                break;
            }
        }
    }
    return values;
}

// Carry counts straight from the worst-case rule, used as the oracle for plans.
std::vector<unsigned> worst_case_carries(unsigned n_length, unsigned lp, unsigned lq, const std::vector<unsigned> &widths) {
    std::vector<unsigned> incoming(n_length + 64, 0), counts;
    unsigned lo = 1;
    for (unsigned w : widths) {
        const unsigned hi = lo + w;
        std::uint64_t s_max = 0;
        for (unsigned c = lo; c < hi; ++c) {
            unsigned products = 0;
            for (unsigned i = 0; i < lp; ++i)
                if (c >= i && c - i < lq)
                    ++products;
            s_max += std::uint64_t{products + incoming[c]} << (c - lo);
        }
        unsigned k = oracle::bits_of(s_max >> w);
        k = std::min(k, n_length > hi ? n_length - hi : 0u);
        for (unsigned t = 0; t < k; ++t)
            ++incoming[hi + t];
        counts.push_back(k);
        lo = hi;
    }
    return counts;
}

std::uint64_t factor_value(unsigned length, std::uint64_t free_bits) {
    return 1u | (free_bits << 1) | (std::uint64_t{1} << (length - 1));
}

}  // namespace

TEST_CASE("direct objective for 143") {
    auto inst = make_instance(143);
    auto obj = build_direct(inst);
    CHECK(obj.degree() == 4);
    CHECK(obj.variables().size() == 4);
    CHECK(obj.evaluate(assignment(obj.variables(), 13, 11)) == 0);
    CHECK(obj.evaluate(assignment(obj.variables(), 15, 15)) == 6724);
}

TEST_CASE("direct objective degree is 4 whenever both factors have two free bits") {
    for (std::uint64_t n : {143u, 899u, 3127u, 8881u})
        CHECK(build_direct(make_instance(n)).degree() == 4);
}

TEST_CASE("column table for an 8-bit instance") {
    auto inst = make_instance(143);
    auto table = build_column_table(inst);
    CHECK(table.carries.size() == 10);
    CHECK(table.residuals.size() == 7);
    const auto &vars = table.objective.variables();
    for (const auto &c : table.carries) {
        CHECK(vars.kind(c.id) == VarKind::Carry);
        CHECK(c.target > c.source);
        CHECK(c.weight == (Coeff{1} << (c.target - c.source)));
        CHECK(vars.name(c.id) == "c" + std::to_string(c.source) + "_" + std::to_string(c.target));
    }
    std::vector<unsigned> ones(7, 1);
    auto plan = plan_from_widths(inst, ones);
    auto values = carry_values(vars, table, 13, 11, 143, plan);
    auto bits = assignment(vars, 13, 11, values);
    for (const auto &r : table.residuals)
        CHECK(r.evaluate(bits) == 0);
    CHECK(table.objective.evaluate(bits) == 0);
}

TEST_CASE("block plan for 143") {
    auto inst = make_instance(143);
    std::vector<unsigned> widths{2, 2, 3};
    auto plan = plan_from_widths(inst, widths);
    REQUIRE(plan.blocks.size() == 3);
    CHECK(plan.blocks[0].carries == 2);
    CHECK(plan.blocks[1].carries == 2);
    CHECK(plan.blocks[2].carries == 0);
    CHECK(plan.total_carries() == 4);

    auto greedy = plan_blocks(inst);
    CHECK(greedy.widths() == widths);
    CHECK(greedy == plan);

    std::vector<unsigned> ones(7, 1);
    CHECK(plan_from_widths(inst, ones).total_carries() == 10);
    CHECK(plan_from_widths(inst, ones).total_carries() == build_column_table(inst).carries.size());
}

TEST_CASE("plans must cover the instance") {
    auto inst = make_instance(143);
    std::vector<unsigned> short_widths{2, 2};
    CHECK_THROWS_AS(plan_from_widths(inst, short_widths), Error);
    auto other = plan_blocks(make_instance(3127));
    try {
        build_block_table(inst, other);
        FAIL("expected plan-mismatch");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::PlanMismatch);
    }
}

TEST_CASE("carry counts follow the worst-case column-sum rule") {
    std::mt19937_64 rng(3);
    for (const auto &row : reference_instances()) {
        auto inst = make_instance(row.n);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<unsigned> widths;
            unsigned left = inst.length() - 1;
            while (left > 0) {
                unsigned w = std::min<unsigned>(left, 1 + rng() % 4);
                widths.push_back(w);
                left -= w;
            }
            auto plan = plan_from_widths(inst, widths);
            std::vector<unsigned> got;
            for (const auto &b : plan.blocks)
                got.push_back(b.carries);
            CHECK(got == worst_case_carries(inst.length(), inst.p_length(), inst.q_length(), widths));
        }
    }
}

TEST_CASE("a block with spare capacity emits no carries") {
    auto inst = make_instance(143);
    auto plan = plan_from_widths(inst, std::vector<unsigned>{4, 3});
    CHECK(plan.blocks.back().carries == 0);
}

TEST_CASE("wider blocks never need more carries than columns") {
    std::mt19937_64 rng(8);
    for (const auto &row : reference_instances()) {
        auto inst = make_instance(row.n);
        const auto column = build_column_table(inst).carries.size();
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<unsigned> widths;
            unsigned left = inst.length() - 1;
            while (left > 0) {
                unsigned w = left == 1 ? 1 : std::min<unsigned>(left, 2 + rng() % 4);
                if (left - w == 1)
                    w = left;  // no trailing width-1 block
                widths.push_back(w);
                left -= w;
            }
            CHECK(plan_from_widths(inst, widths).total_carries() <= column);
        }
    }
}

TEST_CASE("block QUBO for 143 matches the reference structure") {
    auto inst = make_instance(143);
    auto hubo = build_objective(inst, Method::Block);
    auto qubo = quadratize(hubo).qubo;
    std::vector<std::string> names;
    for (const auto &v : qubo.variables())
        names.push_back(v.name);
    CHECK(names == std::vector<std::string>{"p1", "p2", "q1", "q2", "c1", "c2", "c3", "c4", "a1", "a2", "a3", "a4"});
    CHECK(qubo.quadratic_term_count() == 55);
    CHECK(qubo.max_abs_coefficient() <= 512);

    auto table = build_block_table(inst, plan_blocks(inst));
    auto values = carry_values(table.objective.variables(), table, 13, 11, 143, plan_blocks(inst));
    CHECK(table.objective.evaluate(assignment(table.objective.variables(), 13, 11, values)) == 0);
}

TEST_CASE("default block plans respect the L^3 coefficient bound") {
    for (const auto &row : reference_instances()) {
        auto inst = make_instance(row.n);
        const Coeff bound = Coeff{inst.length()} * inst.length() * inst.length();
        CHECK(default_block_bound(inst) == bound);
        auto qubo = quadratize(build_objective(inst, Method::Block)).qubo;
        CHECK(qubo.max_abs_coefficient() <= bound);
    }
}

TEST_CASE("fully fixed factors leave no zero-energy state for 15") {
    // L_p = L_q = 2 forces p = q = 3, and 15 = 3 * 5 is not representable.
    auto inst = make_instance(15);
    auto direct = build_objective(inst, Method::Direct);
    CHECK(direct.degree() == 0);
    CHECK(direct.constant_term() == 36);
    for (auto m : {Method::Column, Method::Block})
        CHECK(oracle::exhaustive_min(build_objective(inst, m)).min > 0);
}

TEST_CASE("decode_solution") {
    auto inst = make_instance(143);
    auto vars = factor_registry(inst);
    std::vector<std::uint8_t> bits{0, 1, 1, 0};  // p1 p2 q1 q2
    CHECK(decode_solution(vars, bits, inst) == Factors{13, 11});
    std::vector<std::uint8_t> zeros{0, 0, 0, 0};
    CHECK(decode_solution(vars, zeros, inst) == Factors{9, 9});
    CHECK(decode_solution(std::map<std::string, int>{{"p1", 0}, {"p2", 1}, {"q1", 1}, {"q2", 0}}, inst) ==
          Factors{13, 11});
}

TEST_CASE("zero-energy assignments are exactly the factorizations (N <= 4000)") {
    int instances = 0;
    for (std::uint64_t n = 9; n <= 4000; n += 2) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> factorizations;
        auto inst = make_instance(n);
        const unsigned lp = inst.p_length(), lq = inst.q_length();
        bool semiprime = false;
        for (std::uint64_t p = 3; p * p <= n; p += 2)
            if (n % p == 0 && oracle::is_prime(p) && oracle::is_prime(n / p)) {
                semiprime = true;
                if (oracle::bits_of(p) == lp && oracle::bits_of(n / p) == lq) {
                    factorizations.insert({p, n / p});
                    factorizations.insert({n / p, p});
                }
            }
        if (!semiprime || factorizations.empty() || lp < 2)
            continue;
        ++instances;

        auto direct = build_direct(inst);
        auto column = build_column_table(inst);
        auto block = build_block_table(inst, plan_blocks(inst));
        std::set<std::pair<std::uint64_t, std::uint64_t>> zero_direct, zero_column, zero_block;
        const unsigned fp = lp - 2, fq = lq - 2;
        for (std::uint64_t a = 0; a < (1u << fp); ++a)
            for (std::uint64_t b = 0; b < (1u << fq); ++b) {
                const std::uint64_t p = factor_value(lp, a), q = factor_value(lq, b);
                if (direct.evaluate(assignment(direct.variables(), p, q)) == 0)
                    zero_direct.insert({p, q});
                for (auto [table, out] : {std::pair{&column, &zero_column}, std::pair{&block, &zero_block}}) {
                    const auto &vars = table->objective.variables();
                    std::vector<int> fixed(vars.size(), -1);
                    auto bits = assignment(vars, p, q);
                    for (VarId v = 0; v < vars.size(); ++v)
                        if (vars.kind(v) == VarKind::PBit || vars.kind(v) == VarKind::QBit)
                            fixed[v] = bits[v];
                    if (oracle::residuals_satisfiable(table->residuals, vars.size(), fixed))
                        out->insert({p, q});
                }
            }
        CHECK_MESSAGE(zero_direct == factorizations, "N=" << n);
        CHECK_MESSAGE(zero_column == factorizations, "N=" << n);
        CHECK_MESSAGE(zero_block == factorizations, "N=" << n);
    }
    CHECK(instances > 20);
}

TEST_CASE("method names round-trip") {
    for (auto m : {Method::Direct, Method::Column, Method::Block})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("rows"), Error);
}
