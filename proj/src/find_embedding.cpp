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
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "factorqubo/embed.hpp"
#include "factorqubo/error.hpp"
#include "factorqubo/solvers.hpp"

namespace factorqubo {

std::size_t Embedding::physical_qubit_count() const {
    std::size_t n = 0;
    for (const auto &c : chains)
        n += c.size();
    return n;
}

std::size_t Embedding::max_chain_length() const {
    std::size_t n = 0;
    for (const auto &c : chains)
        n = std::max(n, c.size());
    return n;
}

std::vector<std::string> embedding_problems(const Graph &source, const Graph &target, const Embedding &emb) {
    std::vector<std::string> problems;
    if (emb.chains.size() != source.node_count()) {
        problems.push_back("embedding has " + std::to_string(emb.chains.size()) + " chains for " +
                           std::to_string(source.node_count()) + " variables");
        return problems;
    }
    std::vector<int> owner(target.node_count(), -1);
    for (std::size_t v = 0; v < emb.chains.size(); ++v) {
        const auto &chain = emb.chains[v];
        if (chain.empty())
            problems.push_back("chain " + std::to_string(v) + " is empty");
        for (NodeId q : chain) {
            if (q >= target.node_count()) {
                problems.push_back("chain " + std::to_string(v) + " uses unknown node " + std::to_string(q));
                continue;
            }
            if (owner[q] >= 0)
                problems.push_back("node " + std::to_string(q) + " shared by chains " + std::to_string(owner[q]) +
                                   " and " + std::to_string(v));
            owner[q] = static_cast<int>(v);
        }
    }
    if (!problems.empty())
        return problems;
    for (std::size_t v = 0; v < emb.chains.size(); ++v) {
        const auto &chain = emb.chains[v];
        std::vector<NodeId> stack{chain.front()};
        std::vector<NodeId> seen{chain.front()};
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            for (NodeId y : target.neighbors(x))
                if (owner[y] == static_cast<int>(v) && std::find(seen.begin(), seen.end(), y) == seen.end()) {
                    seen.push_back(y);
                    stack.push_back(y);
                }
        }
        if (seen.size() != chain.size())
            problems.push_back("chain " + std::to_string(v) + " is not connected");
    }
    for (auto [u, v] : source.edges()) {
        bool coupled = false;
        for (NodeId a : emb.chains[u]) {
            for (NodeId b : target.neighbors(a))
                if (owner[b] == static_cast<int>(v)) {
                    coupled = true;
                    break;
                }
            if (coupled)
                break;
        }
        if (!coupled)
            problems.push_back("no coupler between chains " + std::to_string(u) + " and " + std::to_string(v));
    }
    return problems;
}

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

class ChainPlacer {
  public:
    ChainPlacer(const Graph &source, const Graph &target, std::mt19937_64 &rng)
        : source_(source), target_(target), rng_(rng), usage_(target.node_count(), 0),
          chains_(source.node_count()), placed_(source.node_count(), 0), mark_(target.node_count(), 0),
          blocked_(target.node_count(), 0), weight_(target.node_count(), 1.0), occupants_(target.node_count()),
          nbr_mark_(source.node_count(), 0), tally_(source.node_count(), 0),
          visits_(target.node_count(), 0) {}

    const std::vector<Chain> &chains() const { return chains_; }

    void tear_out(NodeId u) {
        for (NodeId q : chains_[u])
            release(u, q);
        chains_[u].clear();
        placed_[u] = 0;
    }

    void assign(NodeId u, Chain chain) {
        for (NodeId q : chain) {
            ++usage_[q];
            occupants_[q].push_back(u);
        }
        chains_[u] = std::move(chain);
        placed_[u] = 1;
    }

    // Drops leaves of u's chain that no placed neighbour needs for adjacency.
    void trim(NodeId u) {
        Chain &chain = chains_[u];
        if (chain.size() <= 1)
            return;
        ++nbr_stamp_;
        for (NodeId v : source_.neighbors(u))
            if (placed_[v]) {
                nbr_mark_[v] = nbr_stamp_;
                tally_[v] = 0;
            }
        ++mark_stamp_;
        for (NodeId x : chain)
            mark_[x] = mark_stamp_;
        auto for_each_contact = [&](NodeId x, auto &&fn) {
            for (NodeId y : target_.neighbors(x))
                for (NodeId v : occupants_[y])
                    if (nbr_mark_[v] == nbr_stamp_)
                        fn(v);
        };
        for (NodeId x : chain)
            for_each_contact(x, [&](NodeId v) { ++tally_[v]; });

        bool removed = true;
        while (removed && chain.size() > 1) {
            removed = false;
            for (std::size_t i = 0; i < chain.size(); ++i) {
                const NodeId x = chain[i];
                int inside = 0;
                for (NodeId y : target_.neighbors(x))
                    inside += mark_[y] == mark_stamp_;
                if (inside != 1)
                    continue;
                bool needed = false;
                for_each_contact(x, [&](NodeId v) { needed = (--tally_[v] == 0) || needed; });
                if (needed) {
                    for_each_contact(x, [&](NodeId v) { ++tally_[v]; });
                    continue;
                }
                mark_[x] = 0;
                release(u, x);
                chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
                removed = true;
                break;
            }
        }
    }

    void trim_neighbours(NodeId u) {
        trim(u);
        for (NodeId v : source_.neighbors(u))
            if (placed_[v])
                trim(v);
    }

    bool overlaps(const Chain &chain) const {
        return std::any_of(chain.begin(), chain.end(), [&](NodeId q) { return usage_[q] > 1; });
    }

    std::size_t overlap_count() const {
        std::size_t n = 0;
        for (int u : usage_)
            if (u > 1)
                n += static_cast<std::size_t>(u - 1);
        return n;
    }

    // Places u (which must be torn out) given the chains of its placed neighbours.
    void place(NodeId u, double alpha) {
        const std::size_t n = target_.node_count();
        for (std::size_t q = 0; q < n; ++q)
            weight_[q] = std::exp2(alpha * usage_[q]);

        std::vector<NodeId> nbrs;
        for (NodeId v : source_.neighbors(u))
            if (placed_[v])
                nbrs.push_back(v);
        if (nbrs.empty()) {
            assign(u, {least_used_node()});
            return;
        }

        if (dist_.size() < nbrs.size()) {
            dist_.resize(nbrs.size());
            parent_.resize(nbrs.size());
        }
        ++blocked_stamp_;
        for (NodeId v : nbrs)
            for (NodeId q : chains_[v])
                blocked_[q] = blocked_stamp_;
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            shortest_paths(chains_[nbrs[k]], dist_[k], parent_[k]);

        const double extra = static_cast<double>(nbrs.size() - 1);
        double best = kInf;
        NodeId root = kNone;
        std::uint64_t ties = 0;
        for (NodeId q = 0; q < n; ++q) {
            if (blocked_[q] == blocked_stamp_)
                continue;
            double cost = -extra * weight_[q];
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                cost += dist_[k][q];
            if (cost < best) {
                best = cost;
                root = q;
                ties = 1;
            } else if (cost == best && cost < kInf) {
                // Reservoir sampling keeps the choice uniform among equal roots.
                if (std::uniform_int_distribution<std::uint64_t>(0, ties++)(rng_) == 0)
                    root = q;
            }
        }
        if (root == kNone) {
            assign(u, {least_used_node()});
            return;
        }

        // Trace root -> neighbour chain paths. Nodes on a single path nearer the
        // neighbour go to the neighbour, so both chains grow toward each other.
        std::vector<std::vector<NodeId>> paths(nbrs.size());
        ++mark_stamp_;
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            for (NodeId x = parent_[k][root]; x != kNone && parent_[k][x] != kNone; x = parent_[k][x]) {
                paths[k].push_back(x);
                ++visits_[x];
                mark_[x] = mark_stamp_;
            }
        Chain chain{root};
        std::vector<std::vector<NodeId>> gifts(nbrs.size());
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            auto &path = paths[k];
            std::size_t cut = path.size();
            while (cut > path.size() - path.size() / 2 && visits_[path[cut - 1]] == 1 && path[cut - 1] != root)
                --cut;
            gifts[k].assign(path.begin() + static_cast<std::ptrdiff_t>(cut), path.end());
            path.resize(cut);
        }
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            for (NodeId x : paths[k])
                if (mark_[x] == mark_stamp_ && x != root) {
                    mark_[x] = 0;
                    chain.push_back(x);
                }
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            for (NodeId x : gifts[k])
                visits_[x] = 0;
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            for (NodeId x : paths[k])
                visits_[x] = 0;
        std::sort(chain.begin(), chain.end());
        assign(u, std::move(chain));
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            extend(nbrs[k], gifts[k]);
    }

    void extend(NodeId v, const std::vector<NodeId> &nodes) {
        if (nodes.empty())
            return;
        Chain &chain = chains_[v];
        for (NodeId q : nodes) {
            ++usage_[q];
            occupants_[q].push_back(v);
            chain.push_back(q);
        }
        std::sort(chain.begin(), chain.end());
    }

  private:
    void release(NodeId u, NodeId q) {
        --usage_[q];
        auto &occ = occupants_[q];
        occ.erase(std::find(occ.begin(), occ.end(), u));
    }

    NodeId least_used_node() {
        int lowest = *std::min_element(usage_.begin(), usage_.end());
        std::vector<NodeId> candidates;
        for (NodeId q = 0; q < usage_.size(); ++q)
            if (usage_[q] == lowest)
                candidates.push_back(q);
        return candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng_)];
    }

    // Multi-source Dijkstra from `sources`; the cost of a path is the sum of
    // weights of the nodes it enters. Sources keep parent kNone.
    void shortest_paths(const Chain &sources, std::vector<double> &dist, std::vector<NodeId> &parent) {
        const std::size_t n = target_.node_count();
        dist.assign(n, kInf);
        parent.assign(n, kNone);
        using Entry = std::pair<double, NodeId>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        for (NodeId s : sources) {
            dist[s] = 0.0;
            heap.emplace(0.0, s);
        }
        while (!heap.empty()) {
            auto [d, x] = heap.top();
            heap.pop();
            if (d > dist[x])
                continue;
            for (NodeId y : target_.neighbors(x)) {
                double nd = d + weight_[y];
                if (nd < dist[y]) {
                    dist[y] = nd;
                    parent[y] = x;
                    heap.emplace(nd, y);
                }
            }
        }
        // Source nodes themselves are never candidates for the new chain.
        for (NodeId s : sources)
            dist[s] = kInf;
    }

    const Graph &source_;
    const Graph &target_;
    std::mt19937_64 &rng_;
    std::vector<int> usage_;
    std::vector<Chain> chains_;
    std::vector<char> placed_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t mark_stamp_ = 0;
    std::vector<std::uint32_t> blocked_;
    std::uint32_t blocked_stamp_ = 0;
    std::vector<double> weight_;
    std::vector<std::vector<double>> dist_;
    std::vector<std::vector<NodeId>> parent_;
    std::vector<std::vector<NodeId>> occupants_;
    std::vector<std::uint32_t> nbr_mark_;
    std::uint32_t nbr_stamp_ = 0;
    std::vector<int> tally_;
    std::vector<int> visits_;
};

std::vector<NodeId> bfs_order(const Graph &g, std::mt19937_64 &rng) {
    const std::size_t n = g.node_count();
    std::vector<NodeId> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    std::shuffle(starts.begin(), starts.end(), rng);
    std::vector<char> seen(n, 0);
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId s : starts) {
        if (seen[s])
            continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            NodeId x = order[head++];
            std::vector<NodeId> next;
            for (NodeId y : g.neighbors(x))
                if (!seen[y]) {
                    seen[y] = 1;
                    next.push_back(y);
                }
            std::shuffle(next.begin(), next.end(), rng);
            order.insert(order.end(), next.begin(), next.end());
        }
    }
    return order;
}

std::optional<Embedding> embedding_attempt(const Graph &source, const HardwareGraph &hw,
                                           const EmbeddingOptions &options, std::mt19937_64 &rng) {
    const Graph &target = hw.graph();
    ChainPlacer placer(source, target, rng);
    const double alpha_max = std::log2(static_cast<double>(target.node_count())) + 2.0;
    const double step = (alpha_max - options.alpha) / std::max(1u, options.max_passes / 2);

    auto order = bfs_order(source, rng);
    for (NodeId u : order) {
        placer.place(u, options.alpha);
        placer.trim_neighbours(u);
    }

    // Regrow every chain under a rising overlap penalty until disjoint, or
    // until the overlap count stops improving for `patience` passes.
    std::size_t overlap = placer.overlap_count();
    std::size_t best_overlap = overlap;
    unsigned since_best = 0;
    for (unsigned pass = 0; pass < options.max_passes && overlap > 0 && since_best < options.patience; ++pass) {
        double alpha = std::min(alpha_max, options.alpha + step * (pass + 1));
        std::shuffle(order.begin(), order.end(), rng);
        for (NodeId u : order) {
            placer.tear_out(u);
            placer.place(u, alpha);
            placer.trim_neighbours(u);
        }
        overlap = placer.overlap_count();
        if (overlap < best_overlap) {
            best_overlap = overlap;
            since_best = 0;
        } else {
            ++since_best;
        }
    }
    if (overlap > 0)
        return std::nullopt;

    // Shrink chains without giving up disjointness; a regrow touches u and its
    // neighbours, so those are what gets restored on rejection.
    for (unsigned pass = 0; pass < options.improvement_passes; ++pass) {
        std::shuffle(order.begin(), order.end(), rng);
        for (NodeId u : order) {
            std::vector<NodeId> touched{u};
            for (NodeId v : source.neighbors(u))
                touched.push_back(v);
            std::vector<Chain> previous;
            std::size_t before = 0;
            for (NodeId v : touched) {
                previous.push_back(placer.chains()[v]);
                before += previous.back().size();
            }
            placer.tear_out(u);
            placer.place(u, 2.0 * alpha_max);
            placer.trim_neighbours(u);
            std::size_t after = 0;
            for (NodeId v : touched)
                after += placer.chains()[v].size();
            if (placer.overlap_count() > 0 || after >= before) {
                for (std::size_t i = 0; i < touched.size(); ++i) {
                    placer.tear_out(touched[i]);
                    placer.assign(touched[i], std::move(previous[i]));
                }
            }
        }
    }

    Embedding emb{placer.chains()};
    if (!embedding_problems(source, target, emb).empty())
        return std::nullopt;
    return emb;
}

}  // namespace

Embedding find_embedding(const Graph &source, const HardwareGraph &hw, const EmbeddingOptions &options) {
    if (source.node_count() > hw.node_count())
        throw Error(ErrorKind::EmbeddingNotFound, std::to_string(source.node_count()) +
                                                      " variables cannot fit on " +
                                                      std::to_string(hw.node_count()) + " hardware nodes");
    if (source.node_count() == 0)
        return {};
    for (unsigned attempt = 0; attempt < options.tries; ++attempt) {
        std::mt19937_64 rng(derive_seed(options.seed, attempt));
        if (auto emb = embedding_attempt(source, hw, options, rng))
            return *emb;
    }
    throw Error(ErrorKind::EmbeddingNotFound, "no embedding of " + std::to_string(source.node_count()) +
                                                  " variables / " + std::to_string(source.edge_count()) +
                                                  " edges into Chimera " + to_string(hw.shape()) + " after " +
                                                  std::to_string(options.tries) + " tries");
}

}  // namespace factorqubo
