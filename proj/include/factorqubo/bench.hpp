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

#include "json.hpp"

#include "factorqubo/builders.hpp"
#include "factorqubo/embed.hpp"
#include "factorqubo/model.hpp"
#include "factorqubo/solvers.hpp"

namespace factorqubo {

// One row of the reference semiprime table as printed, with the result of
// checking it.
struct ReferenceInstance {
    BigInt n;
    BigInt p;
    BigInt q;
    unsigned n_length = 0;
    bool consistent = true;  // p * q == n
};

// 143 .. 376289. The 231037 row is kept as printed (q = 363) and flagged.
const std::vector<ReferenceInstance> &reference_instances();

struct RunRecord {
    BigInt n;
    unsigned n_length = 0;
    Method method = Method::Block;
    std::string solver;
    std::uint64_t reads = 0;
    std::uint64_t seed = 0;
    std::uint64_t sweeps = 0;
    double anneal_time_us = 0.0;       // nominal, per read
    double sampling_time_us = 0.0;     // measured
    double programming_time_us = 0.0;  // build + quadratize (+ embed), measured
    std::uint64_t success_count = 0;
    std::size_t logical_variables = 0;
    std::size_t quadratic_terms = 0;
    std::optional<std::size_t> physical_qubits;
    std::optional<double> broken_chain_fraction;
    std::optional<Factors> factors;  // first verified pair
    std::string status = "ok";       // "ok" or an error kind
    std::string message;

    bool ok() const { return status == "ok"; }
};

// (programming + sampling time) / successes, in microseconds. Throws
// NoSolution when nothing was factored.
double tts(const RunRecord &record);

struct TTSEntry {
    BigInt n;
    std::string solver;
    std::uint64_t reads = 0;
    std::uint64_t seed = 0;
    std::optional<double> tts_us;  // empty: no verified success
};

struct TTSReport {
    std::vector<TTSEntry> entries;
};

struct CampaignConfig {
    std::vector<BigInt> instances;
    Method method = Method::Block;
    std::string solver = "sa";  // brute | sa | schedule
    std::uint64_t reads = 10000;
    // On zero successes the read count is multiplied by 10 until this cap.
    std::uint64_t max_reads = 0;
    std::vector<std::uint64_t> seeds{0};
    std::optional<Coeff> block_bound;
    SAParams sa;
    ScheduleParams schedule_params;
    Schedule schedule = Schedule::linear();
    bool embed = false;
    ChimeraShape chimera;
    unsigned embed_tries = 10;
    Rational j_chain{-2};
    unsigned threads = 0;
};

CampaignConfig campaign_from_json(const nlohmann::json &j);

struct CampaignResult {
    std::vector<RunRecord> records;
    TTSReport report;
};

// build -> quadratize -> (embed) -> solve -> (unembed) -> decode -> verify.
// Failures are captured in the record's status.
RunRecord run_instance(const BigInt &n, std::uint64_t seed, const CampaignConfig &config);

// Records follow config order: instance-major, then seed.
CampaignResult run_campaign(const CampaignConfig &config);

// CSV with one row per N, ascending by L_N:
// L_N,N,logical_variables,quadratic_terms,median_physical_qubits,tts_us
std::string export_scaling(const std::vector<RunRecord> &records);

}  // namespace factorqubo
