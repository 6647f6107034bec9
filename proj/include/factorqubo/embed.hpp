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
#include <string>
#include <utility>
#include <vector>

#include "factorqubo/ising.hpp"
#include "factorqubo/pbf.hpp"
#include "factorqubo/sampleset.hpp"

namespace factorqubo {

using NodeId = std::uint32_t;

// Undirected simple graph with sorted adjacency lists.
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t nodes) : adjacency_(nodes) {}
    static Graph from_edges(std::size_t nodes, const std::vector<std::pair<NodeId, NodeId>> &edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }
    const std::vector<NodeId> &neighbors(NodeId v) const { return adjacency_[v]; }
    bool has_edge(NodeId u, NodeId v) const;
    std::vector<std::pair<NodeId, NodeId>> edges() const;

  private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edges_ = 0;
};

// Interaction graph of a QUBO or Ising program (one node per variable).
Graph interaction_graph(const PseudoBooleanPolynomial &qubo);
Graph interaction_graph(const IsingProgram &ising);

struct ChimeraShape {
    unsigned rows = 16;
    unsigned cols = 16;
    unsigned shore = 4;

    friend bool operator==(const ChimeraShape &, const ChimeraShape &) = default;
};

// "16x16x4" (rows x cols x shore) or "16" for a square C(16, 16, 4).
ChimeraShape parse_chimera(const std::string &text);
std::string to_string(const ChimeraShape &shape);

// Grid of K_{t,t} cells. Node ((row * cols + col) * 2 + side) * t + k; side 0
// couples vertically to the same k in the cells above and below, side 1
// horizontally to the cells left and right.
class HardwareGraph {
  public:
    HardwareGraph(ChimeraShape shape, Graph graph) : shape_(shape), graph_(std::move(graph)) {}

    const ChimeraShape &shape() const noexcept { return shape_; }
    const Graph &graph() const noexcept { return graph_; }
    std::size_t node_count() const noexcept { return graph_.node_count(); }
    std::size_t edge_count() const noexcept { return graph_.edge_count(); }
    NodeId node(unsigned row, unsigned col, unsigned side, unsigned k) const;

  private:
    ChimeraShape shape_;
    Graph graph_;
};

HardwareGraph chimera(unsigned rows, unsigned cols, unsigned shore);
inline HardwareGraph chimera(const ChimeraShape &s) { return chimera(s.rows, s.cols, s.shore); }

using Chain = std::vector<NodeId>;

// chains[v] holds the hardware nodes representing logical variable v, sorted.
struct Embedding {
    std::vector<Chain> chains;

    std::size_t physical_qubit_count() const;
    std::size_t max_chain_length() const;
    friend bool operator==(const Embedding &, const Embedding &) = default;
};

// Human-readable list of broken invariants: empty chains, out-of-range or
// shared nodes, disconnected chains, logical edges with no coupler.
std::vector<std::string> embedding_problems(const Graph &source, const Graph &target, const Embedding &emb);

struct EmbeddingOptions {
    std::uint64_t seed = 0;
    unsigned tries = 10;
    unsigned max_passes = 64;
    // Give up a try once this many passes pass without fewer shared nodes.
    unsigned patience = 12;
    unsigned improvement_passes = 2;
    // Node weight is 2^(alpha * usage) while chains may still overlap.
    double alpha = 2.0;
};

// Chain-growing heuristic: each variable is placed at the root minimising the
// summed weighted shortest-path distance to its placed neighbours' chains; the
// near half of each path joins the new chain and the far half the neighbour's.
// All chains are then torn out and re-placed, pass after pass, with weights
// that punish shared nodes, until the chains are disjoint. Restarts with
// derived seeds up to `tries` times and throws EmbeddingNotFound when none
// succeeds.
Embedding find_embedding(const Graph &source, const HardwareGraph &hw, const EmbeddingOptions &options = {});

struct EmbeddedIsing {
    IsingProgram physical;                // one spin per used hardware node, named q<node>
    std::vector<NodeId> physical_nodes;   // physical spin index -> hardware node
    Embedding embedding;
    Rational j_chain{-2};
    Rational scale{1};
    std::size_t chain_coupler_count = 0;

    // Physical minus scaled logical energy on chain-consistent states.
    Rational chain_offset() const { return j_chain * static_cast<std::int64_t>(chain_coupler_count); }
};

// Splits h_v evenly across chain(v), puts J_uv on the lexicographically
// smallest coupler between the two chains, shrinks every non-chain value by a
// single factor into [-1, 1] and sets each intra-chain coupler to j_chain.
EmbeddedIsing embed_ising(const IsingProgram &logical, const Embedding &emb, const HardwareGraph &hw,
                          const Rational &j_chain = Rational(-2));

// Lifts a logical spin state onto its chains.
std::vector<std::int8_t> spread_to_chains(const EmbeddedIsing &embedded, std::span<const std::int8_t> logical_spins);

// Majority vote per chain (exact ties go to +1), re-scored against the
// logical program. Records the occurrence-weighted fraction of broken chains.
SampleSet unembed(const SampleSet &physical_samples, const EmbeddedIsing &embedded, const Program &logical);

}  // namespace factorqubo
