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

#include "factorqubo/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "factorqubo/error.hpp"
#include "spin_model.hpp"

namespace factorqubo {

namespace detail {

namespace {

std::int64_t scale_exact(const Rational &r, std::int64_t denominator) {
    std::int64_t factor = denominator / r.denominator();
    return checked_mul(r.numerator(), factor);
}

}  // namespace

SpinModel SpinModel::compile(const IsingProgram &ising) {
    SpinModel m;
    m.n = ising.size();
    std::int64_t den = ising.offset().denominator();
    auto fold = [&](const Rational &r) {
        std::int64_t g = std::gcd(den, r.denominator());
        den = checked_mul(den / g, r.denominator());
    };
    for (const auto &h : ising.fields())
        fold(h);
    for (const auto &[pair, j] : ising.couplings())
        fold(j);
    m.denominator = den;
    m.offset = scale_exact(ising.offset(), den);
    m.h.resize(m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        m.h[i] = scale_exact(ising.fields()[i], den);

    std::vector<std::size_t> degree(m.n, 0);
    for (const auto &[pair, j] : ising.couplings()) {
        ++degree[pair.first];
        ++degree[pair.second];
    }
    m.row.assign(m.n + 1, 0);
    for (std::size_t i = 0; i < m.n; ++i)
        m.row[i + 1] = m.row[i] + degree[i];
    m.col.resize(m.row[m.n]);
    m.weight.resize(m.row[m.n]);
    std::vector<std::size_t> fill(m.row.begin(), m.row.end() - 1);
    for (const auto &[pair, j] : ising.couplings()) {
        std::int64_t w = scale_exact(j, den);
        m.col[fill[pair.first]] = pair.second;
        m.weight[fill[pair.first]++] = w;
        m.col[fill[pair.second]] = pair.first;
        m.weight[fill[pair.second]++] = w;
    }
    return m;
}

SpinModel SpinModel::compile(const Program &program) {
    if (const auto *qubo = std::get_if<PseudoBooleanPolynomial>(&program))
        return compile(to_ising(*qubo));
    return compile(std::get<IsingProgram>(program));
}

std::vector<std::int64_t> SpinModel::local_fields(const std::vector<std::int8_t> &spins) const {
    std::vector<std::int64_t> f(h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = row[i]; k < row[i + 1]; ++k)
            f[i] += weight[k] * spins[col[k]];
    return f;
}

std::int64_t SpinModel::scaled_energy(const std::vector<std::int8_t> &spins) const {
    std::int64_t e = offset;
    for (std::size_t i = 0; i < n; ++i) {
        e += h[i] * spins[i];
        for (std::size_t k = row[i]; k < row[i + 1]; ++k)
            if (col[k] > i)
                e += weight[k] * spins[i] * spins[col[k]];
    }
    return e;
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)> &body) {
    if (threads == 0)
        threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                for (std::uint64_t i = next++; i < count; i = next++)
                    body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        });
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<std::int8_t> to_program_domain(Domain domain, const std::vector<std::int8_t> &spins) {
    return domain == Domain::Binary ? spins_to_bits(spins) : spins;
}

}  // namespace detail

unsigned default_thread_count() {
    if (const char *env = std::getenv("FACTORQUBO_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

std::vector<std::int8_t> spins_from_mask(std::uint64_t mask, std::size_t n) {
    std::vector<std::int8_t> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = (mask >> i) & 1 ? 1 : -1;
    return s;
}

}  // namespace

SampleSet brute_force(const Program &program, const BruteForceOptions &options) {
    auto start = Clock::now();
    const auto model = detail::SpinModel::compile(program);
    const std::size_t n = model.n;
    if (n > options.max_variables || n > 40)
        throw Error(ErrorKind::TooManyVariables, std::to_string(n) + " variables exceed the brute-force cap of " +
                                                     std::to_string(std::min<std::size_t>(options.max_variables, 40)));
    if (options.full_spectrum && n > 20)
        throw Error(ErrorKind::TooManyVariables, "full spectrum is limited to 20 variables");

    const Domain domain = domain_of(program);
    SampleSet out(variables_of(program), domain);
    auto emit = [&](std::uint64_t mask, std::int64_t e) {
        out.push_back({detail::to_program_domain(domain, spins_from_mask(mask, n)), Rational(e, model.denominator), 1});
    };

    // Gray-code walk starting from all spins down.
    std::vector<std::int8_t> spins(n, -1);
    std::vector<std::int64_t> field = model.local_fields(spins);
    std::int64_t e = model.scaled_energy(spins);
    std::uint64_t mask = 0;
    std::int64_t best = e;
    std::uint64_t ground_count = 0;
    std::vector<std::uint64_t> ground;
    auto consider = [&] {
        if (options.full_spectrum) {
            emit(mask, e);
            best = std::min(best, e);
            return;
        }
        if (e < best) {
            best = e;
            ground.clear();
            ground_count = 0;
        }
        if (e == best) {
            ++ground_count;
            if (ground.size() < options.max_ground_states)
                ground.push_back(mask);
        }
    };
    consider();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        auto i = static_cast<std::size_t>(std::countr_zero(k));
        e -= 2 * spins[i] * field[i];
        spins[i] = static_cast<std::int8_t>(-spins[i]);
        mask ^= std::uint64_t{1} << i;
        const std::int64_t two_s = 2 * spins[i];
        for (std::size_t q = model.row[i]; q < model.row[i + 1]; ++q)
            field[model.col[q]] += two_s * model.weight[q];
        consider();
    }
    if (!options.full_spectrum) {
        for (auto m : ground)
            emit(m, best);
    }
    out.sort();

    auto &meta = out.metadata();
    meta.solver = "brute";
    meta.reads = out.size();
    meta.sampling_time_us = micros_since(start);
    meta.info["ground_energy"] = to_string(Rational(best, model.denominator));
    if (!options.full_spectrum)
        meta.info["ground_state_count"] = std::to_string(ground_count);
    return out;
}

void SAParams::validate() const {
    if (sweeps < 1)
        throw Error(ErrorKind::InvalidInput, "sweeps must be at least 1");
    if (reads < 1)
        throw Error(ErrorKind::InvalidInput, "reads must be at least 1");
    if (t_initial && !(*t_initial > 0.0))
        throw Error(ErrorKind::InvalidInput, "initial temperature must be positive");
    if (!(t_final > 0.0))
        throw Error(ErrorKind::InvalidInput, "final temperature must be positive");
}

std::vector<double> temperature_ladder(double t_initial, double t_final, std::uint64_t sweeps) {
    std::vector<double> ladder(sweeps);
    if (sweeps == 1) {
        ladder[0] = t_final;
        return ladder;
    }
    const double ratio = std::log(t_final / t_initial);
    for (std::uint64_t k = 0; k < sweeps; ++k)
        ladder[k] = t_initial * std::exp(ratio * static_cast<double>(k) / static_cast<double>(sweeps - 1));
    return ladder;
}

namespace {

double program_scale(const Program &program) {
    if (const auto *qubo = std::get_if<PseudoBooleanPolynomial>(&program))
        return static_cast<double>(qubo->max_abs_coefficient());
    return to_double(std::get<IsingProgram>(program).max_abs_coefficient());
}

}  // namespace

SampleSet simulated_annealing(const Program &program, const SAParams &params) {
    params.validate();
    const auto model = detail::SpinModel::compile(program);
    const double scale = program_scale(program);
    const double t0 = params.t_initial.value_or(scale > 0.0 ? scale : 1.0);
    const auto ladder = temperature_ladder(t0, params.t_final, params.sweeps);
    std::vector<double> beta(ladder.size());
    std::transform(ladder.begin(), ladder.end(), beta.begin(), [](double t) { return 1.0 / t; });
    const double inv_den = 1.0 / static_cast<double>(model.denominator);
    const std::size_t n = model.n;

    std::vector<std::vector<std::int8_t>> states(params.reads);
    auto start = Clock::now();
    detail::parallel_for(params.reads, params.threads, [&](std::uint64_t read) {
        std::mt19937_64 rng(derive_seed(params.seed, read));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::vector<std::int8_t> spins(n);
        for (auto &s : spins)
            s = (rng() >> 63) ? 1 : -1;
        auto field = model.local_fields(spins);
        for (double b : beta) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t delta = -2 * spins[i] * field[i];
                if (delta > 0 && uniform(rng) >= std::exp(-b * static_cast<double>(delta) * inv_den))
                    continue;
                spins[i] = static_cast<std::int8_t>(-spins[i]);
                const std::int64_t two_s = 2 * spins[i];
                for (std::size_t q = model.row[i]; q < model.row[i + 1]; ++q)
                    field[model.col[q]] += two_s * model.weight[q];
            }
        }
        states[read] = detail::to_program_domain(domain_of(program), spins);
    });
    SampleMetadata meta;
    meta.solver = "sa";
    meta.seed = params.seed;
    meta.reads = params.reads;
    meta.anneal_time_us = 1.0;
    meta.sampling_time_us = micros_since(start);
    meta.info["sweeps"] = std::to_string(params.sweeps);
    meta.info["t_initial"] = std::to_string(t0);
    meta.info["t_final"] = std::to_string(params.t_final);
    return SampleSet::aggregate(program, states, std::move(meta));
}

}  // namespace factorqubo
