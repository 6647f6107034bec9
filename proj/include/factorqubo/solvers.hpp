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
#include <optional>
#include <string>
#include <vector>

#include "factorqubo/sampleset.hpp"

namespace factorqubo {

struct BruteForceOptions {
    std::size_t max_variables = 26;
    // Return every state instead of only the ground set (<= 20 variables).
    bool full_spectrum = false;
    // Ground states beyond this many are counted but not stored.
    std::size_t max_ground_states = 1u << 16;
};

SampleSet brute_force(const Program &program, const BruteForceOptions &options = {});

struct SAParams {
    std::uint64_t sweeps = 64;
    // Defaults to the program's largest |coefficient|.
    std::optional<double> t_initial;
    double t_final = 0.1;
    std::uint64_t reads = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: default_thread_count()

    void validate() const;
};

// Geometric ladder from t_initial to t_final, one entry per sweep.
std::vector<double> temperature_ladder(double t_initial, double t_final, std::uint64_t sweeps);

SampleSet simulated_annealing(const Program &program, const SAParams &params);

// Annealing schedule on a grid s in [0, 1]; A is the transverse (driver)
// strength and B the problem strength.
struct Schedule {
    std::vector<double> s;
    std::vector<double> a;
    std::vector<double> b;
    double anneal_time_us = 1.0;

    static Schedule linear(std::size_t points = 2);
    // A(s) = a_value, B(s) = b_value everywhere.
    static Schedule constant(double a_value, double b_value);

    void validate() const;
    // Piecewise-linear interpolation; returns {A(s), B(s)}.
    std::pair<double, double> at(double s_value) const;
};

struct ScheduleParams {
    std::uint64_t sweeps = 100;
    double temperature = 0.05;
    std::uint64_t reads = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    void validate() const;
};

// Classical spin-vector analog of A(s) sum sigma_x + B(s) H_P: each spin is
// an angle theta in [0, pi] with energy -A sum sin(theta) + B H_P(cos theta),
// relaxed by Metropolis moves while s sweeps the grid. Reads are returned
// as sign(cos theta).
SampleSet schedule_anneal(const IsingProgram &ising, const Schedule &schedule, const ScheduleParams &params);

// FACTORQUBO_THREADS if set and positive, otherwise hardware concurrency.
unsigned default_thread_count();

// Counter-based seed derivation (splitmix64) shared by all stochastic code.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace factorqubo
