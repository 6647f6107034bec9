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
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "factorqubo/error.hpp"
#include "factorqubo/solvers.hpp"
#include "spin_model.hpp"

namespace factorqubo {

Schedule Schedule::linear(std::size_t points) {
    if (points < 2)
        throw Error(ErrorKind::InvalidInput, "a schedule needs at least two grid points");
    Schedule sched;
    for (std::size_t k = 0; k < points; ++k) {
        double s = static_cast<double>(k) / static_cast<double>(points - 1);
        sched.s.push_back(s);
        sched.a.push_back(1.0 - s);
        sched.b.push_back(s);
    }
    return sched;
}

Schedule Schedule::constant(double a_value, double b_value) {
    Schedule sched;
    sched.s = {0.0, 1.0};
    sched.a = {a_value, a_value};
    sched.b = {b_value, b_value};
    return sched;
}

void Schedule::validate() const {
    if (s.size() < 2 || a.size() != s.size() || b.size() != s.size())
        throw Error(ErrorKind::InvalidInput, "schedule needs >= 2 points with matching s, A and B grids");
    if (s.front() != 0.0 || s.back() != 1.0)
        throw Error(ErrorKind::InvalidInput, "schedule grid must start at s = 0 and end at s = 1");
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!(a[k] >= 0.0) || !(b[k] >= 0.0))
            throw Error(ErrorKind::InvalidInput, "A(s) and B(s) must be non-negative");
        if (k > 0) {
            if (!(s[k] > s[k - 1]))
                throw Error(ErrorKind::InvalidInput, "schedule grid must be strictly increasing");
            if (a[k] > a[k - 1] || b[k] < b[k - 1])
                throw Error(ErrorKind::InvalidInput, "A(s) must not increase and B(s) must not decrease");
        }
    }
    if (!(anneal_time_us >= 0.0))
        throw Error(ErrorKind::InvalidInput, "anneal time must be non-negative");
}

std::pair<double, double> Schedule::at(double s_value) const {
    s_value = std::clamp(s_value, 0.0, 1.0);
    auto it = std::upper_bound(s.begin(), s.end(), s_value);
    if (it == s.end())
        return {a.back(), b.back()};
    std::size_t hi = static_cast<std::size_t>(it - s.begin());
    std::size_t lo = hi - 1;
    double t = (s_value - s[lo]) / (s[hi] - s[lo]);
    return {a[lo] + t * (a[hi] - a[lo]), b[lo] + t * (b[hi] - b[lo])};
}

void ScheduleParams::validate() const {
    if (sweeps < 1)
        throw Error(ErrorKind::InvalidInput, "sweeps must be at least 1");
    if (reads < 1)
        throw Error(ErrorKind::InvalidInput, "reads must be at least 1");
    if (!(temperature > 0.0))
        throw Error(ErrorKind::InvalidInput, "temperature must be positive");
}

SampleSet schedule_anneal(const IsingProgram &ising, const Schedule &schedule, const ScheduleParams &params) {
    schedule.validate();
    params.validate();
    const auto model = detail::SpinModel::compile(ising);
    const std::size_t n = model.n;
    const double inv_den = 1.0 / static_cast<double>(model.denominator);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = static_cast<double>(model.h[i]) * inv_den;
    std::vector<double> w(model.weight.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        w[k] = static_cast<double>(model.weight[k]) * inv_den;

    std::vector<std::pair<double, double>> strengths(params.sweeps);
    for (std::uint64_t k = 0; k < params.sweeps; ++k) {
        double s = params.sweeps == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(params.sweeps - 1);
        strengths[k] = schedule.at(s);
    }
    const double beta = 1.0 / params.temperature;

    std::vector<std::vector<std::int8_t>> states(params.reads);
    auto start = std::chrono::steady_clock::now();
    detail::parallel_for(params.reads, params.threads, [&](std::uint64_t read) {
        std::mt19937_64 rng(derive_seed(params.seed, read));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
        // Every rotor starts along the driver axis, the ground state of -A sum sin(theta).
        std::vector<double> theta(n, std::numbers::pi / 2);
        std::vector<double> cosine(n, std::cos(std::numbers::pi / 2));
        std::vector<double> sine(n, 1.0);
        std::vector<double> field(h);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t q = model.row[i]; q < model.row[i + 1]; ++q)
                field[i] += w[q] * cosine[model.col[q]];
        for (const auto &[a_s, b_s] : strengths) {
            for (std::size_t i = 0; i < n; ++i) {
                const double proposal = angle(rng);
                const double c = std::cos(proposal);
                const double sn = std::sin(proposal);
                const double delta = -a_s * (sn - sine[i]) + b_s * (c - cosine[i]) * field[i];
                if (delta > 0.0 && uniform(rng) >= std::exp(-beta * delta))
                    continue;
                const double dc = c - cosine[i];
                theta[i] = proposal;
                cosine[i] = c;
                sine[i] = sn;
                for (std::size_t q = model.row[i]; q < model.row[i + 1]; ++q)
                    field[model.col[q]] += w[q] * dc;
            }
        }
        std::vector<std::int8_t> spins(n);
        for (std::size_t i = 0; i < n; ++i)
            spins[i] = cosine[i] >= 0.0 ? 1 : -1;
        states[read] = std::move(spins);
    });
    SampleMetadata meta;
    meta.solver = "schedule";
    meta.seed = params.seed;
    meta.reads = params.reads;
    meta.anneal_time_us = schedule.anneal_time_us;
    meta.sampling_time_us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    meta.info["sweeps"] = std::to_string(params.sweeps);
    meta.info["temperature"] = std::to_string(params.temperature);
    return SampleSet::aggregate(ising, states, std::move(meta));
}

}  // namespace factorqubo
