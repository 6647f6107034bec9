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

#include "factorqubo/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "factorqubo/error.hpp"
#include "factorqubo/io.hpp"

namespace factorqubo {

const std::vector<ReferenceInstance> &reference_instances() {
    static const std::vector<ReferenceInstance> table = [] {
        const std::vector<std::array<unsigned, 3>> printed = {
            {143, 13, 11},          {3127, 59, 53},          {8881, 107, 83},        {59989, 251, 239},
            {103459, 337, 307},     {231037, 499, 363},      {376289, 659, 571},
        };
        std::vector<ReferenceInstance> rows;
        for (const auto &[n, p, q] : printed) {
            BigInt bn(n), bp(p), bq(q);
            rows.push_back({bn, bp, bq, bit_length(bn), bp * bq == bn});
        }
        return rows;
    }();
    return table;
}

double tts(const RunRecord &record) {
    if (record.success_count == 0)
        throw Error(ErrorKind::NoSolution, "N = " + to_string(record.n) + " was never factored; TTS is unbounded");
    return (record.programming_time_us + record.sampling_time_us) / static_cast<double>(record.success_count);
}

CampaignConfig campaign_from_json(const nlohmann::json &j) {
    try {
        CampaignConfig c;
        for (const auto &n : j.at("instances"))
            c.instances.push_back(n.is_string() ? parse_bigint(n.get<std::string>()) : BigInt(n.get<std::uint64_t>()));
        c.method = parse_method(j.value("method", std::string("block")));
        c.solver = j.value("solver", std::string("sa"));
        if (c.solver != "sa" && c.solver != "brute" && c.solver != "schedule")
            throw Error(ErrorKind::InvalidInput, "unknown solver '" + c.solver + "'");
        c.reads = j.value("reads", std::uint64_t{10000});
        c.max_reads = j.value("max_reads", c.reads);
        if (j.contains("seeds"))
            c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("block_bound"))
            c.block_bound = j.at("block_bound").get<Coeff>();
        if (j.contains("sa")) {
            const auto &sa = j.at("sa");
            c.sa.sweeps = sa.value("sweeps", c.sa.sweeps);
            if (sa.contains("t_initial"))
                c.sa.t_initial = sa.at("t_initial").get<double>();
            c.sa.t_final = sa.value("t_final", c.sa.t_final);
        }
        if (j.contains("schedule")) {
            const auto &s = j.at("schedule");
            c.schedule_params.sweeps = s.value("sweeps", c.schedule_params.sweeps);
            c.schedule_params.temperature = s.value("temperature", c.schedule_params.temperature);
            if (s.contains("grid"))
                c.schedule = schedule_from_json(s.at("grid"));
        }
        if (j.contains("embed")) {
            const auto &e = j.at("embed");
            c.embed = e.value("enabled", true);
            c.chimera = parse_chimera(e.value("chimera", std::string("16x16x4")));
            c.embed_tries = e.value("tries", c.embed_tries);
            if (e.contains("j_chain"))
                c.j_chain = e.at("j_chain").is_string() ? parse_rational(e.at("j_chain").get<std::string>())
                                                        : Rational(e.at("j_chain").get<std::int64_t>());
        }
        c.threads = j.value("threads", 0u);
        if (c.seeds.empty())
            throw Error(ErrorKind::InvalidInput, "campaign needs at least one seed");
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("campaign JSON: ") + e.what());
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

// Samples over the logical QUBO, whatever the solver ran on.
SampleSet solve_logical(const PseudoBooleanPolynomial &qubo, const std::optional<EmbeddedIsing> &embedded,
                        const CampaignConfig &config, std::uint64_t reads, std::uint64_t seed) {
    Program target = embedded ? Program(embedded->physical) : Program(qubo);
    SampleSet samples;
    if (config.solver == "brute") {
        samples = brute_force(target);
    } else if (config.solver == "schedule") {
        ScheduleParams params = config.schedule_params;
        params.reads = reads;
        params.seed = seed;
        params.threads = config.threads;
        const IsingProgram ising = embedded ? embedded->physical : to_ising(qubo);
        samples = schedule_anneal(ising, config.schedule, params);
        if (!embedded) {
            std::vector<std::vector<std::int8_t>> states;
            for (const auto &r : samples.records())
                for (std::uint64_t k = 0; k < r.occurrences; ++k)
                    states.push_back(spins_to_bits(r.state));
            samples = SampleSet::aggregate(qubo, states, samples.metadata());
        }
    } else {
        SAParams params = config.sa;
        params.reads = reads;
        params.seed = seed;
        params.threads = config.threads;
        samples = simulated_annealing(target, params);
    }
    if (embedded)
        return unembed(samples, *embedded, qubo);
    return samples;
}

}  // namespace

RunRecord run_instance(const BigInt &n, std::uint64_t seed, const CampaignConfig &config) {
    RunRecord rec;
    rec.n = n;
    rec.method = config.method;
    rec.solver = config.solver;
    rec.seed = seed;
    rec.sweeps = config.solver == "schedule" ? config.schedule_params.sweeps : config.sa.sweeps;
    rec.anneal_time_us = config.solver == "schedule" ? config.schedule.anneal_time_us : 1.0;
    try {
        auto start = Clock::now();
        auto instance = make_instance(n);
        rec.n_length = instance.length();
        auto hubo = build_objective(instance, config.method, config.block_bound);
        auto qubo = quadratize(hubo).qubo;
        rec.logical_variables = qubo.variables().size();
        rec.quadratic_terms = qubo.quadratic_term_count();

        std::optional<EmbeddedIsing> embedded;
        if (config.embed) {
            auto hw = chimera(config.chimera);
            EmbeddingOptions options;
            options.seed = seed;
            options.tries = config.embed_tries;
            try {
                auto emb = find_embedding(interaction_graph(qubo), hw, options);
                rec.physical_qubits = emb.physical_qubit_count();
                embedded = embed_ising(to_ising(qubo), emb, hw, config.j_chain);
            } catch (...) {
                rec.programming_time_us = micros_since(start);
                throw;
            }
        }
        rec.programming_time_us = micros_since(start);

        std::uint64_t reads = config.reads;
        const std::uint64_t cap = std::max(config.max_reads, config.reads);
        std::vector<std::uint8_t> bits;
        while (true) {
            auto samples = solve_logical(qubo, embedded, config, reads, seed);
            rec.reads += samples.total_occurrences();
            rec.sampling_time_us += samples.metadata().sampling_time_us;
            if (samples.metadata().broken_chain_fraction)
                rec.broken_chain_fraction = samples.metadata().broken_chain_fraction;
            for (const auto &r : samples.records()) {
                bits.assign(r.state.begin(), r.state.end());
                auto f = decode_solution(samples.variables(), bits, instance);
                if (!verify_factorization(instance, f.p, f.q))
                    continue;
                rec.success_count += r.occurrences;
                if (!rec.factors)
                    rec.factors = f;
            }
            if (rec.success_count > 0 || reads >= cap || config.solver == "brute")
                break;
            reads = std::min(cap, reads * 10);
        }
    } catch (const Error &e) {
        rec.status = to_string(e.kind());
        rec.message = e.what();
    }
    return rec;
}

CampaignResult run_campaign(const CampaignConfig &config) {
    CampaignResult result;
    for (const auto &n : config.instances)
        for (auto seed : config.seeds) {
            auto rec = run_instance(n, seed, config);
            TTSEntry entry{rec.n, rec.solver, rec.reads, rec.seed, std::nullopt};
            if (rec.success_count > 0)
                entry.tts_us = tts(rec);
            result.report.entries.push_back(std::move(entry));
            result.records.push_back(std::move(rec));
        }
    return result;
}

std::string export_scaling(const std::vector<RunRecord> &records) {
    struct Row {
        unsigned n_length = 0;
        BigInt n;
        std::size_t logical = 0;
        std::size_t quadratic = 0;
        std::vector<std::size_t> physical;
        double time_us = 0.0;
        std::uint64_t successes = 0;
    };
    std::map<BigInt, Row> rows;
    for (const auto &r : records) {
        auto &row = rows[r.n];
        row.n = r.n;
        row.n_length = r.n_length ? r.n_length : row.n_length;
        row.logical = std::max(row.logical, r.logical_variables);
        row.quadratic = std::max(row.quadratic, r.quadratic_terms);
        if (r.physical_qubits)
            row.physical.push_back(*r.physical_qubits);
        row.time_us += r.programming_time_us + r.sampling_time_us;
        row.successes += r.success_count;
    }
    std::vector<Row> ordered;
    for (auto &[n, row] : rows)
        ordered.push_back(std::move(row));
    std::stable_sort(ordered.begin(), ordered.end(), [](const Row &a, const Row &b) {
        return a.n_length != b.n_length ? a.n_length < b.n_length : a.n < b.n;
    });

    std::ostringstream os;
    os << "L_N,N,logical_variables,quadratic_terms,median_physical_qubits,tts_us\n";
    char buf[64];
    for (auto &row : ordered) {
        os << row.n_length << ',' << to_string(row.n) << ',' << row.logical << ',' << row.quadratic << ',';
        if (!row.physical.empty()) {
            auto &p = row.physical;
            std::sort(p.begin(), p.end());
            std::size_t mid = p.size() / 2;
            if (p.size() % 2)
                os << p[mid];
            else {
                std::snprintf(buf, sizeof buf, "%g", (static_cast<double>(p[mid - 1]) + static_cast<double>(p[mid])) / 2);
                os << buf;
            }
        }
        os << ',';
        if (row.successes > 0) {
            std::snprintf(buf, sizeof buf, "%.3f", row.time_us / static_cast<double>(row.successes));
            os << buf;
        } else {
            os << "inf";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace factorqubo
