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
#include <sstream>

#include "factorqubo/embed.hpp"
#include "factorqubo/error.hpp"

namespace factorqubo {

Graph Graph::from_edges(std::size_t nodes, const std::vector<std::pair<NodeId, NodeId>> &edges) {
    Graph g(nodes);
    for (auto [u, v] : edges) {
        if (u >= nodes || v >= nodes)
            throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
        if (u == v)
            throw Error(ErrorKind::InvalidInput, "self-loop in graph");
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto &adj : g.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        g.edges_ += adj.size();
    }
    g.edges_ /= 2;
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= adjacency_.size())
        return false;
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < adjacency_.size(); ++u)
        for (NodeId v : adjacency_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph interaction_graph(const PseudoBooleanPolynomial &qubo) {
    if (qubo.degree() > 2)
        throw Error(ErrorKind::NotQuadratic, "interaction graph needs a quadratic program");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto &[m, c] : qubo.terms())
        if (m.degree() == 2)
            edges.emplace_back(m[0], m[1]);
    return Graph::from_edges(qubo.variables().size(), edges);
}

Graph interaction_graph(const IsingProgram &ising) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto &[pair, j] : ising.couplings())
        edges.emplace_back(pair.first, pair.second);
    return Graph::from_edges(ising.size(), edges);
}

ChimeraShape parse_chimera(const std::string &text) {
    std::vector<unsigned> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorKind::Parse, "malformed Chimera shape '" + text + "'");
        parts.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    ChimeraShape shape;
    if (parts.size() == 1)
        shape = {parts[0], parts[0], 4};
    else if (parts.size() == 3)
        shape = {parts[0], parts[1], parts[2]};
    else
        throw Error(ErrorKind::Parse, "Chimera shape must be 'M' or 'MxNxT', got '" + text + "'");
    if (shape.rows == 0 || shape.cols == 0 || shape.shore == 0)
        throw Error(ErrorKind::InvalidInput, "Chimera dimensions must be positive");
    return shape;
}

std::string to_string(const ChimeraShape &s) {
    return std::to_string(s.rows) + "x" + std::to_string(s.cols) + "x" + std::to_string(s.shore);
}

NodeId HardwareGraph::node(unsigned row, unsigned col, unsigned side, unsigned k) const {
    return ((row * shape_.cols + col) * 2 + side) * shape_.shore + k;
}

HardwareGraph chimera(unsigned rows, unsigned cols, unsigned shore) {
    if (rows == 0 || cols == 0 || shore == 0)
        throw Error(ErrorKind::InvalidInput, "Chimera dimensions must be positive");
    ChimeraShape shape{rows, cols, shore};
    auto id = [&](unsigned r, unsigned c, unsigned side, unsigned k) {
        return static_cast<NodeId>(((r * cols + c) * 2 + side) * shore + k);
    };
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c) {
            for (unsigned i = 0; i < shore; ++i)
                for (unsigned j = 0; j < shore; ++j)
                    edges.emplace_back(id(r, c, 0, i), id(r, c, 1, j));
            for (unsigned k = 0; k < shore; ++k) {
                if (r + 1 < rows)
                    edges.emplace_back(id(r, c, 0, k), id(r + 1, c, 0, k));
                if (c + 1 < cols)
                    edges.emplace_back(id(r, c, 1, k), id(r, c + 1, 1, k));
            }
        }
    return HardwareGraph(shape, Graph::from_edges(std::size_t{2} * shore * rows * cols, edges));
}

}  // namespace factorqubo
