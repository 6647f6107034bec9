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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "factorqubo/bench.hpp"
#include "factorqubo/builders.hpp"
#include "factorqubo/embed.hpp"
#include "factorqubo/error.hpp"
#include "factorqubo/io.hpp"
#include "factorqubo/solvers.hpp"

using namespace factorqubo;

namespace {

void emit(const std::string &path, const std::string &contents) {
    if (path.empty() || path == "-")
        std::cout << contents;
    else
        write_file(path, contents);
}

bool looks_like_json(const std::string &text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

struct BuildArgs {
    std::string n;
    std::string method = "block";
    std::optional<Coeff> block_bound;
    bool hubo = false;
    std::string out;
    std::string ising_out;
};

int run_build(const BuildArgs &a) {
    auto inst = make_instance(parse_bigint(a.n));
    auto hubo = build_objective(inst, parse_method(a.method), a.block_bound);
    auto poly = a.hubo ? hubo : quadratize(hubo).qubo;
    emit(a.out, polynomial_to_json(poly, inst).dump(2) + "\n");
    if (!a.ising_out.empty())
        emit(a.ising_out, ising_to_text(to_ising(poly)));
    std::cerr << "N=" << to_string(inst.n()) << " L_N=" << inst.length() << " method=" << a.method
              << " variables=" << poly.variables().size() << " quadratic_terms=" << poly.quadratic_term_count()
              << " degree=" << poly.degree() << " max|coeff|=" << poly.max_abs_coefficient() << "\n";
    return 0;
}

struct SolveArgs {
    std::string in;
    std::string solver = "sa";
    std::uint64_t reads = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sweeps;
    std::optional<double> t_initial;
    std::optional<double> t_final;
    std::optional<double> temperature;
    std::string schedule;
    std::string embedding;
    bool full_spectrum = false;
    std::string out;
};

int run_solve(const SolveArgs &a) {
    const std::string text = read_file(a.in);
    std::optional<FactorizationInstance> instance;
    Program logical;
    if (looks_like_json(text)) {
        auto loaded = polynomial_from_json(json::parse(text));
        if (!loaded.poly.is_quadratic())
            throw Error(ErrorKind::NotQuadratic, "solve needs a QUBO; build without --hubo");
        logical = loaded.poly;
        instance = loaded.instance;
    } else {
        logical = ising_from_text(text);
    }

    std::optional<EmbeddedIsing> embedded;
    if (!a.embedding.empty()) {
        auto ej = json::parse(read_file(a.embedding));
        auto hw = chimera(parse_chimera(ej.value("chimera", std::string("16x16x4"))));
        auto emb = embedding_from_json(ej, variables_of(logical));
        Rational j_chain = parse_rational(ej.value("j_chain", std::string("-2")));
        const IsingProgram ising = std::holds_alternative<IsingProgram>(logical)
                                       ? std::get<IsingProgram>(logical)
                                       : to_ising(std::get<PseudoBooleanPolynomial>(logical));
        embedded = embed_ising(ising, emb, hw, j_chain);
    }
    Program target = embedded ? Program(embedded->physical) : logical;

    SampleSet samples;
    if (a.solver == "brute") {
        BruteForceOptions options;
        options.full_spectrum = a.full_spectrum;
        samples = brute_force(target, options);
    } else if (a.solver == "sa") {
        SAParams p;
        p.reads = a.reads;
        p.seed = a.seed;
        if (a.sweeps)
            p.sweeps = *a.sweeps;
        p.t_initial = a.t_initial;
        if (a.t_final)
            p.t_final = *a.t_final;
        samples = simulated_annealing(target, p);
    } else if (a.solver == "schedule") {
        ScheduleParams p;
        p.reads = a.reads;
        p.seed = a.seed;
        if (a.sweeps)
            p.sweeps = *a.sweeps;
        if (a.temperature)
            p.temperature = *a.temperature;
        Schedule sched = a.schedule.empty() ? Schedule::linear() : schedule_from_json(json::parse(read_file(a.schedule)));
        const IsingProgram ising = std::holds_alternative<IsingProgram>(target)
                                       ? std::get<IsingProgram>(target)
                                       : to_ising(std::get<PseudoBooleanPolynomial>(target));
        samples = schedule_anneal(ising, sched, p);
        if (!embedded && std::holds_alternative<PseudoBooleanPolynomial>(logical)) {
            std::vector<std::vector<std::int8_t>> states;
            for (const auto &r : samples.records())
                for (std::uint64_t k = 0; k < r.occurrences; ++k)
                    states.push_back(spins_to_bits(r.state));
            samples = SampleSet::aggregate(logical, states, samples.metadata());
        }
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown solver '" + a.solver + "'");
    }
    if (embedded)
        samples = unembed(samples, *embedded, logical);

    emit(a.out, sampleset_to_json(samples, instance).dump(2) + "\n");
    std::cerr << "solver=" << samples.metadata().solver << " distinct=" << samples.size()
              << " lowest=" << to_string(samples.lowest().energy) << "\n";
    return 0;
}

struct EmbedArgs {
    std::string in;
    std::string chimera = "16x16x4";
    std::uint64_t seed = 0;
    unsigned tries = 10;
    std::string jchain = "-2";
    std::string out;
    std::string ising_out;
};

int run_embed(const EmbedArgs &a) {
    auto loaded = polynomial_from_json(json::parse(read_file(a.in)));
    auto shape = parse_chimera(a.chimera);
    auto hw = chimera(shape);
    EmbeddingOptions options;
    options.seed = a.seed;
    options.tries = a.tries;
    auto emb = find_embedding(interaction_graph(loaded.poly), hw, options);
    auto embedded = embed_ising(to_ising(loaded.poly), emb, hw, parse_rational(a.jchain));
    emit(a.out, embedding_to_json(emb, loaded.poly.variables(), shape, embedded).dump(2) + "\n");
    if (!a.ising_out.empty())
        emit(a.ising_out, ising_to_text(embedded.physical));
    std::cerr << "logical=" << emb.chains.size() << " physical_qubits=" << emb.physical_qubit_count()
              << " couplers=" << embedded.physical.couplings().size()
              << " max_chain=" << emb.max_chain_length() << "\n";
    return 0;
}

struct BenchArgs {
    std::string config;
    std::string out;
};

int run_bench(const BenchArgs &a) {
    auto config = campaign_from_json(json::parse(read_file(a.config)));
    auto result = run_campaign(config);
    for (const auto &r : result.records) {
        std::cerr << "N=" << to_string(r.n) << " seed=" << r.seed << " status=" << r.status
                  << " reads=" << r.reads << " successes=" << r.success_count;
        if (r.success_count > 0)
            std::cerr << " tts_us=" << tts(r);
        if (!r.ok())
            std::cerr << " (" << r.message << ")";
        std::cerr << "\n";
    }
    emit(a.out, export_scaling(result.records));
    return 0;
}

struct VerifyArgs {
    std::string n;
    std::string p;
    std::string q;
    std::string samples;
};

int run_verify(const VerifyArgs &a) {
    auto inst = make_instance(parse_bigint(a.n));
    std::cout << "N=" << to_string(inst.n()) << " L_N=" << inst.length() << " L_p=" << inst.p_length()
              << " L_q=" << inst.q_length() << "\n";
    int status = 0;
    if (!a.p.empty() || !a.q.empty()) {
        if (a.p.empty() || a.q.empty())
            throw Error(ErrorKind::InvalidInput, "--p and --q go together");
        BigInt p = parse_bigint(a.p), q = parse_bigint(a.q);
        bool ok = verify_factorization(inst, p, q);
        std::cout << to_string(p) << " x " << to_string(q) << (ok ? " == " : " != ") << to_string(inst.n()) << "\n";
        if (ok && !representable(inst, p, q))
            std::cout << "warning: factors do not fit the " << inst.p_length() << "/" << inst.q_length()
                      << "-bit layout; the built objectives have no zero-energy state\n";
        status = ok ? 0 : 1;
    }
    if (!a.samples.empty()) {
        auto j = json::parse(read_file(a.samples));
        std::uint64_t verified = 0, total = 0;
        for (const auto &rec : j.at("records")) {
            auto n = rec.at("num_occurrences").get<std::uint64_t>();
            total += n;
            if (rec.contains("p") && verify_factorization(inst, parse_bigint(rec.at("p").get<std::string>()),
                                                           parse_bigint(rec.at("q").get<std::string>())))
                verified += n;
        }
        std::cout << "verified reads: " << verified << " / " << total << "\n";
        if (verified == 0)
            status = 1;
    }
    return status;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compile integer factorization into QUBO/Ising programs, solve, embed and benchmark"};
    app.require_subcommand(1);

    BuildArgs build;
    auto *b = app.add_subcommand("build", "Build the objective for N");
    b->add_option("--n", build.n, "Odd integer to factor")->required();
    b->add_option("--method", build.method, "direct | column | block")->check(CLI::IsMember({"direct", "column", "block"}));
    b->add_option("--block-bound", build.block_bound, "Largest allowed block coefficient (default L_N^3)");
    b->add_flag("--hubo", build.hubo, "Emit the objective before quadratization");
    b->add_option("--out", build.out, "Output JSON (default stdout)");
    b->add_option("--ising-out", build.ising_out, "Also write the Ising text form");

    SolveArgs solve;
    auto *s = app.add_subcommand("solve", "Sample a QUBO JSON or Ising text program");
    s->add_option("--in", solve.in, "Program file")->required();
    s->add_option("--solver", solve.solver, "brute | sa | schedule")->check(CLI::IsMember({"brute", "sa", "schedule"}));
    s->add_option("--reads", solve.reads, "Number of reads");
    s->add_option("--seed", solve.seed, "Random seed");
    s->add_option("--sweeps", solve.sweeps, "Sweeps per read");
    s->add_option("--t-initial", solve.t_initial, "SA initial temperature (default max |coeff|)");
    s->add_option("--t-final", solve.t_final, "SA final temperature");
    s->add_option("--temperature", solve.temperature, "Schedule-anneal temperature");
    s->add_option("--schedule", solve.schedule, "Schedule JSON {s, A, B}");
    s->add_option("--embedding", solve.embedding, "Solve on the embedded program and unembed");
    s->add_flag("--full-spectrum", solve.full_spectrum, "brute: emit every state (<= 20 variables)");
    s->add_option("--out", solve.out, "Output JSON (default stdout)");

    EmbedArgs embed;
    auto *e = app.add_subcommand("embed", "Minor-embed a QUBO into a Chimera graph");
    e->add_option("--in", embed.in, "QUBO JSON")->required();
    e->add_option("--chimera", embed.chimera, "MxNxT");
    e->add_option("--seed", embed.seed, "Random seed");
    e->add_option("--tries", embed.tries, "Restarts before giving up");
    e->add_option("--jchain", embed.jchain, "Chain coupling (negative)");
    e->add_option("--out", embed.out, "Embedding JSON (default stdout)");
    e->add_option("--ising-out", embed.ising_out, "Also write the physical Ising text");

    BenchArgs bench;
    auto *c = app.add_subcommand("bench", "Run a campaign and export scaling CSV");
    c->add_option("--config", bench.config, "Campaign JSON")->required();
    c->add_option("--out", bench.out, "CSV output (default stdout)");

    VerifyArgs verify;
    auto *v = app.add_subcommand("verify", "Check factors or a sample file against N");
    v->add_option("--n", verify.n, "Odd integer")->required();
    v->add_option("--p", verify.p, "Candidate factor");
    v->add_option("--q", verify.q, "Candidate factor");
    v->add_option("--samples", verify.samples, "Sample JSON from solve");

    CLI11_PARSE(app, argc, argv);
    try {
        if (b->parsed())
            return run_build(build);
        if (s->parsed())
            return run_solve(solve);
        if (e->parsed())
            return run_embed(embed);
        if (c->parsed())
            return run_bench(bench);
        if (v->parsed())
            return run_verify(verify);
    } catch (const Error &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
