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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "factorqubo/builders.hpp"
#include "factorqubo/error.hpp"
#include "factorqubo/solvers.hpp"

using namespace factorqubo;

namespace {

PseudoBooleanPolynomial block_qubo_143() { return quadratize(build_objective(make_instance(143), Method::Block)).qubo; }

bool decodes_to(const SampleSet &set, const SampleRecord &rec, const FactorizationInstance &inst, int p, int q) {
    std::vector<std::uint8_t> bits(rec.state.begin(), rec.state.end());
    auto f = decode_solution(set.variables(), bits, inst);
    return f == Factors{p, q} || f == Factors{q, p};
}

double ground_fraction(const SampleSet &s, const Rational &ground) {
    std::uint64_t hits = 0;
    for (const auto &r : s.records())
        if (r.energy == ground)
            hits += r.occurrences;
    return static_cast<double>(hits) / static_cast<double>(s.total_occurrences());
}

}  // namespace

TEST_CASE("energy of QUBO and Ising programs") {
    PseudoBooleanPolynomial zero(Registry{"x", "y"});
    std::vector<std::int8_t> state{1, 0};
    CHECK(energy(zero, state) == Rational(0));

    IsingProgram h(Registry{"s"});
    h.add_field(0, Rational(1));
    std::vector<std::int8_t> down{-1};
    CHECK(energy(h, down) == Rational(-1));

    std::vector<std::int8_t> not_a_bit{2, 0};
    try {
        energy(zero, not_a_bit);
        FAIL("expected wrong-variable-domain");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::WrongVariableDomain);
    }
    std::vector<std::int8_t> zero_spin{0};
    CHECK_THROWS_AS(energy(h, zero_spin), Error);

    auto qubo = block_qubo_143();
    auto ground = brute_force(qubo);
    CHECK(energy(qubo, ground.lowest().state) == Rational(0));
}

TEST_CASE("energy agrees between a QUBO and its Ising form") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto qubo = oracle::random_polynomial(rng, 8, 2, 14, 7);
        auto ising = to_ising(qubo);
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            std::vector<std::int8_t> bits(8);
            for (unsigned i = 0; i < 8; ++i)
                bits[i] = (mask >> i) & 1u;
            CHECK(energy(qubo, bits) == energy(ising, bits_to_spins(bits)));
        }
    }
}

TEST_CASE("brute force on the 143 block QUBO") {
    auto inst = make_instance(143);
    auto set = brute_force(block_qubo_143());
    REQUIRE_FALSE(set.empty());
    CHECK(set.lowest().energy == Rational(0));
    CHECK(set.metadata().info.at("ground_energy") == "0");
    for (const auto &r : set.records()) {
        CHECK(r.energy == Rational(0));
        CHECK(decodes_to(set, r, inst, 13, 11));
    }
}

TEST_CASE("brute force small cases") {
    PseudoBooleanPolynomial single(Registry{"x"});
    single.add_term({0}, 1);
    auto s = brute_force(single);
    REQUIRE(s.size() == 1);
    CHECK(s.lowest().state == std::vector<std::int8_t>{0});
    CHECK(s.lowest().energy == Rational(0));

    IsingProgram fm(Registry{"s", "t"});
    fm.add_coupling(0, 1, Rational(-1));
    auto g = brute_force(fm);
    REQUIRE(g.size() == 2);
    CHECK(g.records()[0].energy == Rational(-1));
    CHECK(g.records()[0].state == std::vector<std::int8_t>{-1, -1});
    CHECK(g.records()[1].state == std::vector<std::int8_t>{1, 1});

    Registry many;
    for (int i = 0; i < 30; ++i)
        many.add("x" + std::to_string(i));
    try {
        brute_force(PseudoBooleanPolynomial(many));
        FAIL("expected too-many-variables");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::TooManyVariables);
    }
}

TEST_CASE("brute force full spectrum matches exhaustive evaluation") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned n = 1 + rng() % 10;
        auto qubo = oracle::random_polynomial(rng, n, 2, 3 * n, 9);
        BruteForceOptions opt;
        opt.full_spectrum = true;
        auto spectrum = brute_force(qubo, opt);
        CHECK(spectrum.total_occurrences() == (std::uint64_t{1} << n));
        for (const auto &r : spectrum.records()) {
            std::uint64_t mask = 0;
            for (unsigned i = 0; i < n; ++i)
                mask |= std::uint64_t(r.state[i]) << i;
            CHECK(r.energy == Rational(oracle::eval_mask(qubo, mask)));
        }
        CHECK(spectrum.lowest().energy == Rational(oracle::exhaustive_min(qubo).min));
    }
}

TEST_CASE("temperature ladder is geometric") {
    auto ladder = temperature_ladder(100.0, 0.1, 64);
    REQUIRE(ladder.size() == 64);
    CHECK(ladder.front() == doctest::Approx(100.0));
    CHECK(ladder.back() == doctest::Approx(0.1));
    const double ratio = ladder[1] / ladder[0];
    for (std::size_t k = 1; k < ladder.size(); ++k)
        CHECK(ladder[k] / ladder[k - 1] == doctest::Approx(ratio));
    CHECK(temperature_ladder(5.0, 0.5, 1) == std::vector<double>{0.5});
}

TEST_CASE("SA parameter validation") {
    SAParams p;
    p.sweeps = 0;
    CHECK_THROWS_AS(p.validate(), Error);
    p.sweeps = 10;
    p.t_final = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p.t_final = 0.1;
    p.t_initial = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("SA reaches the 143 ground state at 1000 reads") {
    SAParams p;
    p.reads = 1000;
    p.seed = 1;
    auto set = simulated_annealing(block_qubo_143(), p);
    CHECK(set.total_occurrences() == 1000);
    CHECK(set.lowest().energy == Rational(0));
    CHECK(set.metadata().solver == "sa");
}

TEST_CASE("SA on a coupling-free zero program") {
    PseudoBooleanPolynomial zero(Registry{"a", "b", "c"});
    SAParams p;
    p.reads = 200;
    auto set = simulated_annealing(zero, p);
    for (const auto &r : set.records())
        CHECK(r.energy == Rational(0));
}

TEST_CASE("SA is deterministic and thread-count independent") {
    auto qubo = block_qubo_143();
    SAParams p;
    p.reads = 300;
    p.seed = 42;
    p.threads = 1;
    auto a = simulated_annealing(qubo, p);
    auto b = simulated_annealing(qubo, p);
    p.threads = 4;
    auto c = simulated_annealing(qubo, p);
    CHECK(a.same_samples(b));
    CHECK(a.same_samples(c));
    p.seed = 43;
    CHECK_FALSE(a.same_samples(simulated_annealing(qubo, p)));
}

TEST_CASE("sample sets are sorted and exactly scored") {
    std::mt19937_64 rng(21);
    auto qubo = oracle::random_polynomial(rng, 10, 2, 25, 9);
    SAParams p;
    p.reads = 500;
    p.sweeps = 8;
    auto set = simulated_annealing(qubo, p);
    CHECK(set.total_occurrences() == 500);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto &r = set.records()[i];
        std::uint64_t mask = 0;
        for (unsigned k = 0; k < 10; ++k)
            mask |= std::uint64_t(r.state[k]) << k;
        CHECK(r.energy == Rational(oracle::eval_mask(qubo, mask)));
        if (i > 0)
            CHECK(set.records()[i - 1].energy <= r.energy);
    }
}

TEST_CASE("SA agrees with brute force on small programs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        unsigned n = 2 + rng() % 19;
        Program program = oracle::random_polynomial(rng, n, 2, 3 * n, 12);
        if (trial % 2)
            program = to_ising(std::get<PseudoBooleanPolynomial>(program));
        const Rational exact = brute_force(program).lowest().energy;
        SAParams p;
        p.reads = 1000;
        p.seed = static_cast<std::uint64_t>(trial);
        Rational found = simulated_annealing(program, p).lowest().energy;
        if (found != exact) {
            p.reads *= 2;  // one retry with doubled reads
            found = simulated_annealing(program, p).lowest().energy;
        }
        CHECK_MESSAGE(found == exact, "trial " << trial << " n=" << n);
    }
}

TEST_CASE("schedules") {
    auto lin = Schedule::linear(5);
    CHECK_NOTHROW(lin.validate());
    auto [a0, b0] = lin.at(0.0);
    auto [a1, b1] = lin.at(1.0);
    auto [am, bm] = lin.at(0.25);
    CHECK(a0 == doctest::Approx(1.0));
    CHECK(b0 == doctest::Approx(0.0));
    CHECK(a1 == doctest::Approx(0.0));
    CHECK(b1 == doctest::Approx(1.0));
    CHECK(am == doctest::Approx(0.75));
    CHECK(bm == doctest::Approx(0.25));

    Schedule bad = Schedule::linear();
    bad.a = {0.0, 1.0};  // A must not increase
    CHECK_THROWS_AS(bad.validate(), Error);
    Schedule negative = Schedule::constant(-1.0, 1.0);
    CHECK_THROWS_AS(negative.validate(), Error);
    CHECK_NOTHROW(Schedule::constant(0.0, 1.0).validate());
    CHECK_NOTHROW(Schedule::constant(1.0, 0.0).validate());
}

TEST_CASE("schedule anneal without a problem term samples uniformly") {
    IsingProgram ising(Registry{"s", "t", "u", "v"});
    ising.add_field(0, Rational(1));
    ising.add_coupling(1, 2, Rational(-1));
    ising.add_coupling(2, 3, Rational(1, 2));
    ising.add_offset(Rational(3));
    ScheduleParams p;
    p.reads = 4000;
    p.seed = 5;
    auto set = schedule_anneal(ising, Schedule::constant(1.0, 0.0), p);
    CHECK(set.total_occurrences() == 4000);
    std::vector<double> up(4, 0.0);
    double mean = 0.0;
    for (const auto &r : set.records()) {
        for (unsigned i = 0; i < 4; ++i)
            up[i] += r.state[i] > 0 ? static_cast<double>(r.occurrences) : 0.0;
        mean += to_double(r.energy) * static_cast<double>(r.occurrences);
    }
    for (double u : up)
        CHECK(u / 4000.0 == doctest::Approx(0.5).epsilon(0.1));
    // Uniform states average to the offset.
    CHECK(mean / 4000.0 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("schedule anneal with A = 0 matches fixed-temperature Metropolis on a ferromagnet") {
    IsingProgram fm(Registry{"s", "t"});
    fm.add_coupling(0, 1, Rational(-1));
    ScheduleParams sp;
    sp.reads = 5000;
    sp.seed = 3;
    auto vec = schedule_anneal(fm, Schedule::constant(0.0, 1.0), sp);
    SAParams p;
    p.reads = 5000;
    p.seed = 3;
    p.sweeps = sp.sweeps;
    p.t_initial = sp.temperature;
    p.t_final = sp.temperature;
    auto sa = simulated_annealing(fm, p);
    CHECK(ground_fraction(vec, Rational(-1)) >= ground_fraction(sa, Rational(-1)));
}

TEST_CASE("schedule anneal is deterministic") {
    IsingProgram fm(Registry{"s", "t", "u"});
    fm.add_coupling(0, 1, Rational(-1));
    fm.add_coupling(1, 2, Rational(1));
    ScheduleParams sp;
    sp.reads = 200;
    sp.seed = 8;
    auto a = schedule_anneal(fm, Schedule::linear(), sp);
    auto b = schedule_anneal(fm, Schedule::linear(), sp);
    CHECK(a.same_samples(b));
    CHECK(a.metadata().solver == "schedule");
}

TEST_CASE("derived seeds differ per counter") {
    CHECK(derive_seed(0, 0) != derive_seed(0, 1));
    CHECK(derive_seed(1, 0) != derive_seed(0, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("spin and bit conversions") {
    std::vector<std::int8_t> bits{0, 1, 1};
    auto spins = bits_to_spins(bits);
    CHECK(spins == std::vector<std::int8_t>{-1, 1, 1});
    CHECK(spins_to_bits(spins) == bits);
}
