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

#include "doctest.h"

#include "factorqubo/builders.hpp"
#include "factorqubo/error.hpp"
#include "factorqubo/io.hpp"

using namespace factorqubo;

namespace {

template <class F>
ErrorKind kind_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("instance JSON round trip") {
    auto inst = make_instance(143);
    auto j = instance_to_json(inst);
    CHECK(j.at("N") == "143");
    CHECK(j.at("L_N") == 8);
    CHECK(instance_from_json(j) == inst);
    CHECK(instance_from_json(json::parse(R"({"N": 143})")) == inst);
    CHECK(kind_of([] { instance_from_json(json::parse(R"({"N": "143", "L_N": 9})")); }) ==
          ErrorKind::InconsistentLengths);
    CHECK(kind_of([] { instance_from_json(json::parse(R"({"M": 1})")); }) == ErrorKind::Parse);
    CHECK(kind_of([] { instance_from_json(json::parse(R"({"N": 144})")); }) == ErrorKind::EvenInput);
}

TEST_CASE("polynomial JSON round trip") {
    auto inst = make_instance(143);
    auto hubo = build_objective(inst, Method::Column);
    auto qubo = quadratize(build_objective(inst, Method::Block)).qubo;
    for (const auto *poly : {&hubo, &qubo}) {
        auto back = polynomial_from_json(json::parse(polynomial_to_json(*poly, inst).dump()));
        CHECK(back.poly == *poly);
        REQUIRE(back.instance);
        CHECK(*back.instance == inst);
    }
    CHECK_FALSE(polynomial_from_json(polynomial_to_json(qubo)).instance);
    CHECK(kind_of([] { polynomial_from_json(json::parse(R"({"variables": ["x"], "terms": [{"vars": ["y"], "coeff": 1}]})")); }) ==
          ErrorKind::InvalidInput);
}

TEST_CASE("Ising text round trip") {
    auto qubo = quadratize(build_objective(make_instance(143), Method::Block)).qubo;
    auto ising = to_ising(qubo);
    CHECK(ising_from_text(ising_to_text(ising)) == ising);

    auto parsed = ising_from_text("# tiny\nh a -1/4\nJ a b 3   # trailing\n\noffset 7/2\n");
    REQUIRE(parsed.size() == 2);
    CHECK(parsed.field(0) == Rational(-1, 4));
    CHECK(parsed.coupling(0, 1) == Rational(3));
    CHECK(parsed.offset() == Rational(7, 2));

    CHECK(kind_of([] { ising_from_text("h a\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { ising_from_text("K a b 1\n"); }) == ErrorKind::Parse);
    CHECK_THROWS_AS(ising_from_text("h a one\n"), Error);
}

TEST_CASE("sample set JSON") {
    auto inst = make_instance(143);
    auto qubo = quadratize(build_objective(inst, Method::Block)).qubo;
    SampleSet set(qubo.variables(), Domain::Binary);
    std::vector<std::int8_t> zeros(qubo.variables().size(), 0);
    set.push_back({zeros, energy(qubo, zeros), 4});
    set.metadata().solver = "sa";
    auto j = sampleset_to_json(set, inst);
    CHECK(j.at("variables").size() == qubo.variables().size());
    REQUIRE(j.at("records").size() == 1);
    const auto &r = j.at("records")[0];
    CHECK(r.at("num_occurrences") == 4);
    CHECK(r.at("energy") == to_string(energy(qubo, zeros)));
    CHECK(r.at("verified") == false);
    CHECK(j.at("metadata").at("solver") == "sa");
    CHECK(j.at("metadata").at("domain") == "binary");
    CHECK(j.at("instance").at("N") == "143");
}

TEST_CASE("embedding JSON round trip") {
    Registry vars{"x", "y"};
    Embedding emb{{{0, 4}, {5}}};
    auto j = embedding_to_json(emb, vars, ChimeraShape{1, 1, 4});
    CHECK(j.at("chimera") == "1x1x4");
    CHECK(j.at("stats").at("physical_qubits") == 3);
    CHECK(embedding_from_json(json::parse(j.dump()), vars) == emb);
    CHECK(kind_of([&] { embedding_from_json(json::parse(R"({"chains": {"z": [1]}})"), vars); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([&] { embedding_from_json(json::parse(R"({"links": {}})"), vars); }) == ErrorKind::Parse);
}

TEST_CASE("schedule JSON") {
    auto s = schedule_from_json(json::parse(R"({"s": [0, 0.5, 1], "A": [2, 1, 0], "B": [0, 1, 3], "anneal_time_us": 20})"));
    CHECK(s.anneal_time_us == doctest::Approx(20.0));
    auto [a, b] = s.at(0.75);
    CHECK(a == doctest::Approx(0.5));
    CHECK(b == doctest::Approx(2.0));
    CHECK(kind_of([] { schedule_from_json(json::parse(R"({"s": [0, 1], "A": [1, 0]})")); }) == ErrorKind::Parse);
    CHECK_THROWS_AS(schedule_from_json(json::parse(R"({"s": [0, 1], "A": [0, 1], "B": [0, 1]})")), Error);
}

TEST_CASE("file helpers") {
    const std::string path = "factorqubo_io_test.txt";
    write_file(path, "hello\n");
    CHECK(read_file(path) == "hello\n");
    std::remove(path.c_str());
    CHECK(kind_of([] { read_file("/nonexistent/dir/file"); }) == ErrorKind::InvalidInput);
}
